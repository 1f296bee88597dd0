"""Named check suites bundled behind ``hyperturan verify <suite>``.

Each suite returns a list of ``Check`` records carrying the raw numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .containment import is_cancellative, is_family_free
from .hypergraph import (
    bipartite_like_complete,
    book_f7,
    f4,
    generalized_fan,
    generalized_triangle,
    random_hypergraph,
    turan_edge_count,
    turan_graph,
)
from .search import canonical_form, ex_search
from .spectral import (
    SolverOptions,
    closed_form_b4,
    closed_form_multipartite,
    spectral_radius,
)
from .stability import PeelParams, check_growth_condition, peel


@dataclass
class Check:
    name: str
    passed: bool
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, **self.data}


def closed_forms(opts: SolverOptions | None = None) -> list[Check]:
    opts = opts or SolverOptions()
    out = []
    for l in range(2, 6):
        for k in range(2, l + 1):
            for n in range(l, 21, l):
                for a in (1.5, 2.0, 3.0):
                    lam = spectral_radius(turan_graph(n, l, k), a, opts).lam
                    cf = closed_form_multipartite(n, l, k, a)
                    err = abs(lam - cf) / cf
                    out.append(Check(f"T^{k}_{l}({n}) alpha={a}", err <= 1e-6,
                                     {"lambda": lam, "closed_form": cf, "rel_error": err}))
    for n in range(4, 21):
        for a in (1.5, 2.0, 3.0, 4.0):
            lam = spectral_radius(bipartite_like_complete(n, 2), a, opts).lam
            cf = closed_form_b4(n, a)
            err = abs(lam - cf) / cf
            out.append(Check(f"B_4({n}) alpha={a}", err <= 1e-6,
                             {"lambda": lam, "closed_form": cf, "rel_error": err}))
    return out


def monotonicity(opts: SolverOptions | None = None, alpha: float = 3.0) -> list[Check]:
    """Deleting any single edge of B_4(n) or T^3_3(n) lowers lambda by more than 1e-7."""
    opts = opts or SolverOptions()
    out = []
    hosts = [(f"B_4({n})", bipartite_like_complete(n, 2)) for n in range(4, 13, 2)]
    hosts += [(f"T^3_3({n})", turan_graph(n, 3, 3)) for n in range(3, 13)]
    for name, h in hosts:
        base = spectral_radius(h, alpha, opts).lam
        worst = np.inf
        for e in h.edges:
            sub = h.with_edges([f for f in h.edges if f != e])
            worst = min(worst, base - spectral_radius(sub, alpha, opts).lam)
        out.append(Check(f"{name} single-edge deletion", worst > 1e-7,
                         {"lambda": base, "min_decrease": float(worst), "alpha": alpha}))
    return out


def turan_pairs() -> list[Check]:
    out = []
    fam3 = [generalized_triangle(3), generalized_fan(3), f4()]
    for n in range(3, 13):
        h = turan_graph(n, 3, 3)
        out.append(Check(f"T^3_3({n}) is {{T_3, Fan^3, F_4}}-free", is_family_free(h, fam3)))
        out.append(Check(f"T^3_3({n}) is cancellative", is_cancellative(h)))
    for n in range(4, 13):
        out.append(Check(f"B_4({n}) is F_7-free", is_family_free(bipartite_like_complete(n, 2), [book_f7()])))
    for n in range(4, 11):
        out.append(Check(f"T^4_4({n}) is T_4-free", is_family_free(turan_graph(n, 4, 4), [generalized_triangle(4)])))
    return out


def bollobas() -> list[Check]:
    out = []
    fam = [f4(), generalized_triangle(3)]
    for n in (5, 6):
        r = ex_search(n, 3, fam)
        target = turan_graph(n, 3, 3)
        iso = len(r.witnesses) == 1 and canonical_form(r.witnesses[0]) == canonical_form(target)
        ok = r.optimum == turan_edge_count(n, 3, 3) and iso
        out.append(Check(f"ex({n}, {{F_4, T_3}}) = t^3_3({n})", ok,
                         {"ex": r.optimum, "t": turan_edge_count(n, 3, 3), "witnesses": len(r.witnesses),
                          "witness_is_turan": iso, "nodes": r.nodes_explored}))
    return out


def peeling(opts: SolverOptions | None = None, runs: int = 50, seed: int = 7) -> list[Check]:
    opts = opts or SolverOptions()
    params = PeelParams(alpha=3.0, epsilon=0.3, pi=2 / 9, k=3)
    planted = turan_graph(9, 3, 3).add_isolated()
    tr = peel(planted, params, 4, opts)
    out = [Check("isolated vertex of T^3_3(9)+K_1 is removed first",
                 bool(tr.steps) and tr.steps[0].removed_vertex == 9,
                 {"removed": [s.removed_vertex for s in tr.steps], "reason": tr.terminated_reason})]
    rng = np.random.default_rng(seed)
    worst, steps, idle = 0.0, 0, 0
    for _ in range(runs):
        h = random_hypergraph(rng, int(rng.integers(7, 11)), 3, float(rng.uniform(0.15, 0.6)))
        a = float(rng.choice([1.5, 2.0, 3.0, 4.0]))
        # a high threshold keeps the traces long
        tr = peel(h, PeelParams(a, 0.1, 0.6, 3), 3, opts)
        steps += len(tr.steps)
        idle += not tr.steps
        for s in tr.steps:
            worst = max(worst, s.identity_error)
    out.append(Check("deleted-vertex identity along random traces", worst <= 1e-8 and steps > 0,
                     {"max_error": worst, "runs": runs, "steps": steps, "runs_without_steps": idle}))
    return out


def growth(opts: SolverOptions | None = None) -> list[Check]:
    opts = opts or SolverOptions()
    params = PeelParams(alpha=3.0, epsilon=0.3, pi=2 / 9, k=3)
    lams = [(n, spectral_radius(turan_graph(n, 3, 3), 3.0, opts).lam) for n in range(6, 16)]
    rep = check_growth_condition(lams, params)
    return [Check(f"growth pair n={p['n']}", p["ok"], p) for p in rep["pairs"]]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "closed-forms": closed_forms,
    "monotonicity": monotonicity,
    "turan-pairs": turan_pairs,
    "bollobas": bollobas,
    "peeling": peeling,
    "growth": growth,
}


def run_suite(name: str) -> list[Check]:
    return SUITES[name]()
