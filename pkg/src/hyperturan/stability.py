"""Vertex peeling and finite-n checks of the spectral stability inequalities.

Turán densities are inputs here, never estimated: the limits are not
computable from finite data. Standard values are collected in
``KNOWN_DENSITIES``. The inequalities below are asymptotic statements, so the
checkers report margins and findings rather than raising.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidInputError
from .hypergraph import Hypergraph, min_degree, remove_vertex
from .spectral import (
    SolverOptions,
    SpectralResult,
    check_alpha,
    lagrangian_poly,
    spectral_radius,
)

KNOWN_DENSITIES = {
    "T3": 2 / 9,  # {T_3}, {F_4, T_3}, Fan^3: density of T^3_3(n)
    "T4": 3 / 32,  # T_4, Fan^4: density of T^4_4(n)
    "F7": 3 / 8,  # F_7: density of B_4(n)
}

SUBSTITUTION_NOTE = (
    "the extremal family G_n is instantiated by the caller-supplied candidate "
    "sequence; its lambda is not the maximum over all of G_n"
)


@dataclass(frozen=True)
class PeelParams:
    alpha: float
    epsilon: float
    pi: float
    k: int

    def __post_init__(self):
        check_alpha(self.alpha)
        if not 0 < self.epsilon < 1:
            raise InvalidInputError("epsilon must lie in (0, 1)")
        if not 0 < self.pi <= 1:
            raise InvalidInputError("pi must lie in (0, 1]")
        if self.k < 2:
            raise InvalidInputError("k must be at least 2")

    @property
    def eps_prime(self) -> float:
        return self.epsilon * self.pi * (self.alpha - 1) / (2 * self.k * self.alpha)

    @property
    def eps_double_prime(self) -> float:
        return self.epsilon * self.pi / (2 * (self.k - 1))

    @property
    def exponent(self) -> float:
        """``k - k/alpha``, the growth exponent of lambda."""
        return self.k - self.k / self.alpha


def degree_threshold(n: int, params: PeelParams) -> float:
    """``(1 - eps) * pi * C(n, k-1)``."""
    if n < params.k:
        raise InvalidInputError(f"degree threshold needs n >= k = {params.k}")
    return comb(n, params.k - 1) * params.pi * (1 - params.epsilon)


# ---------------------------------------------------------------------------
# peeling


@dataclass
class PeelStep:
    n_before: int
    removed_vertex: int
    lambda_before: float
    lambda_after: float
    x_min_alpha: float
    min_degree_before: int
    threshold: float
    ratio_bound_ok: bool
    identity_lhs: float
    identity_rhs: float
    removal_bound: float
    residual_before: float

    @property
    def identity_error(self) -> float:
        return abs(self.identity_lhs - self.identity_rhs)


@dataclass
class PeelTrace:
    steps: list[PeelStep] = field(default_factory=list)
    terminated_reason: str = ""
    final_n: int = 0
    final_lambda: float = float("nan")

    def to_jsonl(self) -> str:
        lines = [json.dumps({**asdict(s), "identity_error": s.identity_error}) for s in self.steps]
        lines.append(json.dumps({"terminated_reason": self.terminated_reason,
                                 "final_n": self.final_n, "final_lambda": self.final_lambda}))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = [f.name for f in PeelStep.__dataclass_fields__.values()] + ["identity_error"]
        w = csv.writer(buf)
        w.writerow(names)
        for s in self.steps:
            w.writerow([getattr(s, name) for name in names])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "steps": [{**asdict(s), "identity_error": s.identity_error} for s in self.steps],
            "terminated_reason": self.terminated_reason,
            "final_n": self.final_n,
            "final_lambda": self.final_lambda,
        }


def _argmin_vertex(x: np.ndarray, labels: Sequence[int]) -> int:
    """Index of the smallest entry; entries within 1e-9 of the minimum tie, lowest label wins."""
    lo = float(x.min())
    cut = lo + 1e-9 * max(1.0, float(x.max()))
    tied = [i for i in range(len(x)) if x[i] <= cut]
    return min(tied, key=lambda i: labels[i])


def peel(h: Hypergraph, params: PeelParams, floor_size: int,
         opts: Optional[SolverOptions] = None) -> PeelTrace:
    """Remove minimum-eigenvector-entry vertices until the degree threshold is met.

    Stops with ``degree-threshold-met`` when ``delta(H_i) >= degree_threshold(i)``,
    with ``floor-size-reached`` at ``floor_size`` vertices, and with
    ``solver-failure`` if an eigenvector fails to converge.
    """
    if h.k != params.k:
        raise InvalidInputError("params.k does not match the hypergraph")
    if not params.k <= floor_size < h.n:
        raise InvalidInputError("need k <= floor_size < n")
    opts = opts or SolverOptions()
    a, k = params.alpha, params.k
    trace = PeelTrace()
    cur, labels = h, tuple(range(h.n))
    res: Optional[SpectralResult] = None
    while True:
        thr = degree_threshold(cur.n, params)
        delta = min_degree(cur)
        if delta >= thr:
            trace.terminated_reason = "degree-threshold-met"
            break
        if cur.n <= floor_size:
            trace.terminated_reason = "floor-size-reached"
            break
        if res is None:
            res = spectral_radius(cur, a, opts)
        if not res.converged:
            trace.terminated_reason = "solver-failure"
            break
        x = res.vector
        i = _argmin_vertex(x, labels)
        xa = float(x[i] ** a)
        nxt, keep = remove_vertex(cur, i)
        x_rest = x[list(keep)]
        after = spectral_radius(nxt, a, opts, init=x_rest) if nxt.n else None
        lam_after = after.lam if after is not None else 0.0
        lhs = lagrangian_poly(nxt, x_rest) if nxt.n else 0.0
        rhs = (1 - k * xa) * res.lam
        ratio_lb = res.lam * (1 - k * xa) / (1 - xa) ** (k / a) if xa < 1 else 0.0
        drop = (1 - params.exponent * (1 - params.eps_double_prime / 2) / cur.n) * res.lam
        trace.steps.append(PeelStep(
            n_before=cur.n,
            removed_vertex=labels[i],
            lambda_before=res.lam,
            lambda_after=lam_after,
            x_min_alpha=xa,
            min_degree_before=delta,
            threshold=thr,
            ratio_bound_ok=lam_after >= ratio_lb - 1e-9 * max(1.0, res.lam),
            identity_lhs=lhs,
            identity_rhs=rhs,
            removal_bound=drop,
            residual_before=res.residual,
        ))
        cur, labels, res = nxt, tuple(labels[j] for j in keep), after
        if after is not None and not after.converged:
            trace.terminated_reason = "solver-failure"
            break
    trace.final_n = cur.n
    trace.final_lambda = res.lam if res is not None else float("nan")
    return trace


# ---------------------------------------------------------------------------
# single-inequality checkers


def check_min_entry_bound(h: Hypergraph, params: PeelParams, result: SpectralResult,
                          reference_lambda: Optional[float] = None) -> dict:
    """Report on ``x_min^alpha < (1 - eps'') / n`` and its premises.

    The bound needs ``lambda >= lambda(G_n)`` (``reference_lambda``) and
    ``delta < threshold``. A premise-true, conclusion-false case is recorded
    as a finding, not an error: the bound is only asymptotic.
    """
    n = h.n
    xmin_a = float(result.vector.min() ** params.alpha)
    bound = (1 - params.eps_double_prime) / n
    delta = min_degree(h)
    thr = degree_threshold(n, params)
    lam_ok = None if reference_lambda is None else bool(result.lam >= reference_lambda - 1e-9)
    deg_ok = bool(delta < thr)
    premises = deg_ok and (lam_ok is not False)
    conclusion = bool(xmin_a < bound)
    return {
        "n": n,
        "lambda": result.lam,
        "reference_lambda": reference_lambda,
        "x_min_alpha": xmin_a,
        "bound": bound,
        "margin": bound - xmin_a,
        "min_degree": delta,
        "threshold": thr,
        "premise_lambda": lam_ok,
        "premise_degree": deg_ok,
        "premises_hold": premises,
        "conclusion_holds": conclusion,
        "finding": premises and not conclusion,
        "converged": result.converged,
    }


def check_removal_ratio(h: Hypergraph, v: int, params: PeelParams,
                        opts: Optional[SolverOptions] = None) -> dict:
    """Compare ``lambda(H - v) / lambda(H)`` with the removal bounds for vertex v."""
    opts = opts or SolverOptions()
    a, k, n = params.alpha, params.k, h.n
    full = spectral_radius(h, a, opts)
    xa = float(full.vector[v] ** a)
    hyp = (1 - params.eps_double_prime) / n
    out = {"n": n, "vertex": v, "lambda": full.lam, "x_v_alpha": xa, "hypothesis_bound": hyp}
    if not xa < hyp:
        out.update(applicable=False)
        return out
    sub, keep = remove_vertex(h, v)
    part = spectral_radius(sub, a, opts, init=full.vector[list(keep)])
    ratio = part.lam / full.lam if full.lam > 0 else 1.0
    inter = (1 - k * xa) / (1 - xa) ** (k / a)
    drop = 1 - params.exponent * (1 - params.eps_double_prime / 2) / n
    out.update(
        applicable=True,
        lambda_removed=part.lam,
        ratio=ratio,
        intermediate_bound=inter,
        intermediate_margin=ratio - inter,
        removal_bound=drop,
        removal_margin=ratio - drop,
        converged=full.converged and part.converged,
    )
    return out


def _consecutive(seq: Sequence[tuple[int, float]]) -> list[tuple[int, float]]:
    seq = sorted((int(n), float(v)) for n, v in seq)
    for (n0, _), (n1, _) in zip(seq, seq[1:]):
        if n1 != n0 + 1:
            raise InvalidInputError(f"values must be for consecutive n; got {n0} then {n1}")
    return seq


def growth_increment(n: int, params: PeelParams) -> float:
    """``(k - k/alpha)(1 - eps') pi n^(k - k/alpha - 1)``."""
    return params.exponent * (1 - params.eps_prime) * params.pi * n ** (params.exponent - 1)


def check_growth_condition(lambdas: Sequence[tuple[int, float]], params: PeelParams) -> dict:
    """Check ``lambda_n - lambda_{n-1} >= growth_increment(n)`` for each consecutive pair."""
    seq = _consecutive(lambdas)
    pairs = []
    for (_, prev), (n, cur) in zip(seq, seq[1:]):
        need = growth_increment(n, params)
        pairs.append({"n": n, "difference": cur - prev, "required": need,
                      "margin": cur - prev - need, "ok": cur - prev >= need})
    fails = [p["n"] for p in pairs if not p["ok"]]
    return {
        "pairs": pairs,
        "all_pass": not fails,
        "first_failure": fails[0] if fails else None,
        "failures": fails,
        "eps_prime": params.eps_prime,
        "note": SUBSTITUTION_NOTE,
    }


def check_edge_lambda_conditions(ex_values: Sequence[tuple[int, int]], lambda_values: Sequence[tuple[int, float]],
                         pi: float, k: int, alpha: float, c: Optional[float] = None) -> dict:
    """Edge-increment and lambda-vs-edges conditions; reports the smallest c that works.

    Condition one is strict (``< c n^(k-1)``), so ``c`` must exceed
    ``c_edges``; condition two is ``<= c n^(k-k/alpha-1)``.
    """
    check_alpha(alpha)
    ex_seq = _consecutive(ex_values)
    lam_seq = _consecutive(lambda_values)
    if [n for n, _ in ex_seq] != [n for n, _ in lam_seq]:
        raise InvalidInputError("ex and lambda sequences cover different n")
    expo = k - k / alpha
    inc_ratios, lam_ratios, rows = [], [], []
    for (_, ex_prev), (n, ex_n) in zip(ex_seq, ex_seq[1:]):
        r1 = abs(ex_n - ex_prev - pi * comb(n, k - 1)) / n ** (k - 1)
        inc_ratios.append(r1)
    lam_by_n = dict(lam_seq)
    for n, ex_n in ex_seq[1:]:
        r2 = abs(lam_by_n[n] - math.factorial(k) * ex_n * n ** (-k / alpha)) / n ** (expo - 1)
        lam_ratios.append(r2)
    for (n, _), r1, r2 in zip(ex_seq[1:], inc_ratios, lam_ratios):
        rows.append({"n": n, "edge_ratio": r1, "lambda_ratio": r2})
    c_edges = max(inc_ratios, default=0.0)
    c_lambda = max(lam_ratios, default=0.0)
    out = {"rows": rows, "c_edges": c_edges, "c_lambda": c_lambda,
           "c_min": max(c_edges, c_lambda), "note": SUBSTITUTION_NOTE}
    if c is not None:
        out["c"] = c
        out["pass"] = c_edges < c and c_lambda <= c
    return out


def lambda_lower_bound(n: int, params: PeelParams) -> float:
    """``pi (1 - 2 eps') n^(k - k/alpha)``."""
    if n < params.k:
        raise InvalidInputError("need n >= k")
    return params.pi * (1 - 2 * params.eps_prime) * n ** params.exponent


def check_lambda_lower_bound(lambdas: Sequence[tuple[int, float]], params: PeelParams) -> dict:
    rows = []
    for n, lam in sorted(lambdas):
        lb = lambda_lower_bound(n, params)
        rows.append({"n": n, "lambda": lam, "bound": lb, "margin": lam - lb, "ok": lam >= lb})
    return {"rows": rows, "all_pass": all(r["ok"] for r in rows), "note": SUBSTITUTION_NOTE}


def n0_bound(N0: int, params: PeelParams) -> dict:
    """The explicit ``n_0`` of the peeling argument, in log form and (if finite) directly.

    ``n_0 = (N0^(k-k/alpha) e^(k^2) / ((1 - 2 eps') pi))^(2 / ((k-k/alpha) eps''))``.
    """
    if N0 < params.k:
        raise InvalidInputError("need N0 >= k")
    p = params.exponent
    base_log = p * math.log(N0) + params.k**2 - math.log((1 - 2 * params.eps_prime) * params.pi)
    log_n0 = 2 / (p * params.eps_double_prime) * base_log
    try:
        value = math.exp(log_n0)
    except OverflowError:
        value = math.inf
    return {"log_n0": log_n0, "log10_n0": log_n0 / math.log(10), "n0": value,
            "overflow": math.isinf(value)}


# ---------------------------------------------------------------------------
# elementary inequalities used by the checks


def bernoulli_power_gap(x: float, beta: float) -> float:
    """``(1-x)^(-beta) - (1 + beta x)``; nonnegative for 0 <= x < 1, beta > 0."""
    return (1 - x) ** (-beta) - (1 + beta * x)


def exp_lower_gap(x: float) -> float:
    """``(1-x) - exp(-x - x^2)``; nonnegative for 0 < x < 1/2."""
    return (1 - x) - math.exp(-x - x * x)
