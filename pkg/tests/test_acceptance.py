"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line with its headline
numbers (shown even under capture). Run standalone with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""

import sys
import time
from itertools import combinations

import numpy as np
import pytest

from hyperturan import verify
from hyperturan.containment import is_cancellative, is_family_free
from hyperturan.hypergraph import (
    Hypergraph,
    bipartite_like_complete,
    book_f7,
    f4,
    generalized_triangle,
    random_hypergraph,
    turan_edge_count,
    turan_graph,
    turan_leading_term,
)
from hyperturan.search import canonical_form, enumerate_all, ex_search, spex_search
from hyperturan.spectral import (
    average_bound,
    b4_even_bound,
    closed_form_b4,
    closed_form_multipartite,
    spectral_radius,
)
from hyperturan.stability import PeelParams, check_growth_condition


_capsys = None


@pytest.fixture(autouse=True)
def _grab_capsys(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} | {detail}"
    with _capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_01_multipartite_closed_form():
    worst, count = 0.0, 0
    for l in range(2, 6):
        for k in range(2, l + 1):
            for n in range(l, 21, l):
                for a in (1.5, 2.0, 3.0):
                    lam = spectral_radius(turan_graph(n, l, k), a).lam
                    cf = closed_form_multipartite(n, l, k, a)
                    worst = max(worst, abs(lam - cf) / cf)
                    count += 1
    s1 = spectral_radius(turan_graph(4, 2, 2), 2).lam
    s2 = spectral_radius(turan_graph(6, 3, 3), 3).lam
    ok = worst <= 1e-6 and abs(s1 - 2) <= 1e-6 * 2 and abs(s2 - 8) <= 1e-6 * 8
    report(1, "T^k_l(n) closed form", ok,
           f"{count} cases, max rel err {worst:.2e}, lambda_2(T^2_2(4))={s1:.12g}, lambda_3(T^3_3(6))={s2:.12g}")


def test_02_b4_closed_form():
    worst_even, worst_odd, below = 0.0, 0.0, True
    for n in range(4, 21):
        for a in (1.5, 2.0, 3.0, 4.0):
            lam = spectral_radius(bipartite_like_complete(n, 2), a).lam
            if n % 2 == 0:
                ref = b4_even_bound(n, a)
                worst_even = max(worst_even, abs(lam - ref) / ref)
            else:
                ref = closed_form_b4(n, a)
                worst_odd = max(worst_odd, abs(lam - ref) / ref)
                below &= lam < b4_even_bound(n, a)
    spot = spectral_radius(bipartite_like_complete(4, 2), 4).lam
    ok = worst_even <= 1e-6 and worst_odd <= 1e-6 and below and abs(spot - 6) <= 6e-6
    report(2, "B_4(n) closed form", ok,
           f"even max rel err {worst_even:.2e}, odd max rel err {worst_odd:.2e}, "
           f"odd strictly below even form: {below}, lambda_4(B_4(4))={spot:.12g}")


def test_03_turan_count():
    exact = all(turan_graph(n, l, k).e == turan_edge_count(n, l, k)
                for n in range(31) for l in range(2, 7) for k in range(2, l + 1))
    worst = 0.0
    for l in range(2, 7):
        for k in range(2, l + 1):
            for n in range(max(k, 1), 201):
                worst = max(worst, abs(turan_edge_count(n, l, k) - turan_leading_term(n, l, k)) / n ** (k - 2))
    ok = exact and worst < 10
    report(3, "t^k_l(n) exact and error order", ok,
           f"constructions match counts: {exact}, max |t - lead| / n^(k-2) = {worst:.4g}")


def test_04_bollobas():
    fam = [f4(), generalized_triangle(3)]
    parts = []
    ok = True
    for n, target in ((5, 4), (6, 8)):
        t0 = time.perf_counter()
        r = ex_search(n, 3, fam)
        dt = time.perf_counter() - t0
        iso = [canonical_form(w) for w in r.witnesses] == [canonical_form(turan_graph(n, 3, 3))]
        ok &= r.optimum == target and iso and r.nodes_explored <= 2**20 and dt < 60
        parts.append(f"ex({n})={r.optimum:g} witness~T^3_3({n}):{iso} nodes={r.nodes_explored} {dt:.2f}s")
    report(4, "Bollobas ex(n, {F_4, T_3})", ok, "; ".join(parts))


def test_05_turan_pairs():
    t0 = time.perf_counter()
    checks = verify.turan_pairs()
    dt = time.perf_counter() - t0
    failed = [c.name for c in checks if not c.passed]
    report(5, "Turan-pair freeness", not failed and dt < 60,
           f"{len(checks)} checks, failed={failed}, {dt:.1f}s")


def test_06_cancellative_equivalence():
    fam = [f4(), generalized_triangle(3)]
    graphs = list(enumerate_all(5, 3))
    bad = sum(is_cancellative(h) != is_family_free(h, fam) for h in graphs)
    report(6, "cancellative <=> {F_4, T_3}-free", len(graphs) == 1024 and bad == 0,
           f"{len(graphs)} graphs, {bad} discrepancies")


def test_07_eigen_certificates():
    rng = np.random.default_rng(2024)
    n_conv = 0
    worst_res, worst_avg, worst_mono = 0.0, np.inf, np.inf
    for _ in range(200):
        k = int(rng.choice([3, 4]))
        n = int(rng.integers(k + 1, 11))
        a = float(rng.choice([1.5, 2.0, 3.0, 4.0]))
        h = random_hypergraph(rng, n, k, float(rng.uniform(0.1, 0.7)))
        missing = [e for e in combinations(range(n), k) if e not in h.edge_set]
        if not missing or h.e == 0:
            h = Hypergraph(n, k, list(combinations(range(n), k))[:1])
            missing = [e for e in combinations(range(n), k) if e not in h.edge_set]
        bigger = h.with_edges(list(h.edges) + [missing[int(rng.integers(len(missing)))]])
        r = spectral_radius(h, a)
        rb = spectral_radius(bigger, a, init=r.vector)
        for res, g in ((r, h), (rb, bigger)):
            if res.converged:
                n_conv += 1
                worst_res = max(worst_res, res.residual)
                worst_avg = min(worst_avg, res.lam - average_bound(g, a))
        worst_mono = min(worst_mono, rb.lam - r.lam)
    ok = worst_res <= 1e-8 and worst_avg >= -1e-9 and worst_mono >= -1e-9
    report(7, "eigen-certificates on 200 random graphs", ok,
           f"{n_conv}/400 converged, max residual {worst_res:.2e}, "
           f"min (lambda - average bound) {worst_avg:.3e}, min increase on edge addition {worst_mono:.3e}")


def test_08_strict_monotonicity():
    checks = verify.monotonicity()
    worst = min(c.data["min_decrease"] for c in checks)
    failed = [c.name for c in checks if not c.passed]
    report(8, "single-edge deletion strictly lowers lambda", not failed,
           f"{len(checks)} hosts, smallest decrease {worst:.6g}, failed={failed}")


def test_09_growth_chain():
    params = PeelParams(alpha=3.0, epsilon=0.3, pi=2 / 9, k=3)
    lams = [(n, spectral_radius(turan_graph(n, 3, 3), 3.0).lam) for n in range(6, 16)]
    rep = check_growth_condition(lams, params)
    margins = ", ".join(f"{p['n']}:{p['margin']:+.3f}" for p in rep["pairs"])
    report(9, "growth condition on T^3_3(n), n = 6..15", rep["all_pass"],
           f"failing n={rep['failures']}; margins {margins}")


def test_10_peeling():
    checks = verify.peeling(runs=50)
    planted, ident = checks
    report(10, "peeling sanity", planted.passed and ident.passed,
           f"first removed {planted.data['removed'][:1]} (planted 9); identity max err "
           f"{ident.data['max_error']:.2e} over {ident.data['runs']} runs / {ident.data['steps']} steps")


def test_11_spex_records():
    t0 = time.perf_counter()
    a = spex_search(4, 4, [book_f7()], 4)
    b4_ok = (abs(a.optimum - 6.0) <= 1e-9 and len(a.witnesses) == 1
             and canonical_form(a.witnesses[0]) == canonical_form(bipartite_like_complete(4, 2)))
    b = spex_search(5, 3, [f4(), generalized_triangle(3)], 3)
    lower = average_bound(turan_graph(5, 3, 3), 3)
    ok = b4_ok and b.complete and b.optimum >= lower - 1e-9
    wit = "; ".join(str([list(e) for e in w.edges]) for w in b.witnesses)
    report(11, "spex records", ok,
           f"spex(4,{{F_7}},4)={a.optimum:.12g} witness B_4(4):{b4_ok}; spex(5,{{F_4,T_3}},3)={b.optimum:.12g} "
           f">= {lower:.12g} over {b.classes_evaluated} classes, witnesses {wit}; {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
