import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperturan.errors import InvalidInputError
from hyperturan.hypergraph import (
    Hypergraph,
    b4_edge_count,
    hyperstar,
    matching,
    min_degree,
    random_hypergraph,
    turan_edge_count,
    turan_graph,
)
from hyperturan.spectral import closed_form_b4, spectral_radius
from hyperturan.stability import (
    PeelParams,
    bernoulli_power_gap,
    check_growth_condition,
    check_edge_lambda_conditions,
    check_lambda_lower_bound,
    check_min_entry_bound,
    check_removal_ratio,
    degree_threshold,
    exp_lower_gap,
    lambda_lower_bound,
    n0_bound,
    peel,
)

P3 = PeelParams(alpha=3.0, epsilon=0.3, pi=2 / 9, k=3)


def test_params_validation():
    for bad in [dict(alpha=1.0, epsilon=0.3, pi=0.2, k=3), dict(alpha=3, epsilon=0, pi=0.2, k=3),
                dict(alpha=3, epsilon=0.3, pi=1.5, k=3), dict(alpha=3, epsilon=0.3, pi=0.2, k=1)]:
        with pytest.raises(InvalidInputError):
            PeelParams(**bad)
    assert P3.eps_prime == pytest.approx(0.3 * (2 / 9) * (2 / 3) / 6)


def test_degree_threshold_examples():
    assert degree_threshold(10, PeelParams(3, 0.1, 2 / 9, 3)) == pytest.approx(9)
    for k in (3, 4):
        p = PeelParams(2, 0.4, 0.3, k)
        assert degree_threshold(k, p) == pytest.approx(0.6 * 0.3 * k)
    assert degree_threshold(10, PeelParams(3, 1 - 1e-12, 2 / 9, 3)) == pytest.approx(0, abs=1e-9)


def test_threshold_consistency():
    for k in (3, 4):
        for eps in (0.1, 0.2, 0.3, 0.5):
            p = PeelParams(3.0, eps, math.factorial(k) / k**k, k)
            for n in range(3 * k, 31):
                inc = turan_edge_count(n, k, k) - turan_edge_count(n - 1, k, k)
                assert min_degree(turan_graph(n, k, k)) >= inc
                assert inc >= degree_threshold(n, p) - 1e-9


def test_peel_planted_isolated():
    tr = peel(turan_graph(9, 3, 3).add_isolated(), P3, 4)
    assert tr.steps[0].removed_vertex == 9
    assert tr.steps[0].x_min_alpha == pytest.approx(0, abs=1e-12)
    assert tr.steps[0].lambda_after == pytest.approx(tr.steps[0].lambda_before, rel=1e-9)
    assert tr.terminated_reason == "degree-threshold-met"


def test_peel_immediate_stop():
    tr = peel(turan_graph(9, 3, 3), P3, 4)
    assert tr.steps == [] and tr.terminated_reason == "degree-threshold-met"


def test_peel_matching():
    tr = peel(matching(3, 3), PeelParams(3.0, 0.1, 2 / 9, 3), 3)
    assert 1 <= len(tr.steps) <= 6
    assert all(s.min_degree_before <= 1 for s in tr.steps)
    assert tr.terminated_reason in ("floor-size-reached", "degree-threshold-met")


def test_peel_validation():
    with pytest.raises(InvalidInputError):
        peel(turan_graph(6, 3, 3), PeelParams(3, 0.3, 0.2, 4), 4)
    with pytest.raises(InvalidInputError):
        peel(turan_graph(6, 3, 3), P3, 6)


@settings(max_examples=25, deadline=None)
@given(st.integers(7, 10), st.floats(0.15, 0.6), st.integers(0, 2**31), st.sampled_from([1.5, 2.0, 3.0, 4.0]))
def test_peel_step_invariants(n, p, seed, a):
    h = random_hypergraph(np.random.default_rng(seed), n, 3, p)
    params = PeelParams(a, 0.3, 2 / 9, 3)
    tr = peel(h, params, 3)
    for s in tr.steps:
        assert s.lambda_after <= s.lambda_before + 1e-9
        assert s.identity_error <= 1e-8
    again = peel(h, params, 3)
    assert [s.removed_vertex for s in again.steps] == [s.removed_vertex for s in tr.steps]
    assert again.final_lambda == tr.final_lambda or math.isnan(tr.final_lambda)


def test_min_entry_bound():
    h = turan_graph(6, 3, 3)
    r = spectral_radius(h, 3)
    rep = check_min_entry_bound(h, P3, r)
    assert rep["x_min_alpha"] == pytest.approx(1 / 6)
    assert not rep["conclusion_holds"] and not rep["premise_degree"] and not rep["finding"]
    g = h.add_isolated()
    rep = check_min_entry_bound(g, P3, spectral_radius(g, 3))
    assert rep["conclusion_holds"]
    star = hyperstar(3, 5).with_edges(list(hyperstar(3, 5).edges) + [(1, 3, 5), (2, 4, 6)])
    rep = check_min_entry_bound(star, P3, spectral_radius(star, 3))
    assert {"margin", "premises_hold", "conclusion_holds"} <= set(rep)


def test_removal_ratio():
    h = turan_graph(7, 3, 3).add_isolated()
    rep = check_removal_ratio(h, 7, P3)
    assert rep["applicable"] and rep["ratio"] == pytest.approx(1, abs=1e-9)
    assert rep["intermediate_margin"] >= -1e-9
    rep = check_removal_ratio(turan_graph(6, 3, 3), 0, P3)
    assert not rep["applicable"]
    g = Hypergraph(8, 3, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [2, 4, 5], [3, 4, 6], [1, 5, 6], [6, 4, 7]])
    r = spectral_radius(g, 3)
    v = int(np.argmin(r.vector))
    rep = check_removal_ratio(g, v, P3)
    if rep["applicable"]:
        assert rep["intermediate_margin"] >= -1e-9


def test_growth_condition_mechanics():
    rep = check_growth_condition([(n, 5.0) for n in range(6, 10)], P3)
    assert rep["first_failure"] == 7 and not rep["all_pass"]
    with pytest.raises(InvalidInputError):
        check_growth_condition([(6, 1.0), (8, 2.0)], P3)
    p4 = PeelParams(3.0, 0.3, 3 / 8, 4)
    rep = check_growth_condition([(n, closed_form_b4(n, 3.0)) for n in range(6, 17)], p4)
    assert len(rep["pairs"]) == 10


def test_edge_lambda_conditions():
    lams = [(n, spectral_radius(turan_graph(n, 3, 3), 3.0).lam) for n in range(6, 16)]
    exs = [(n, turan_edge_count(n, 3, 3)) for n in range(6, 16)]
    rep = check_edge_lambda_conditions(exs, lams, 2 / 9, 3, 3.0)
    assert math.isfinite(rep["c_min"]) and rep["c_min"] > 0
    rep = check_edge_lambda_conditions(exs, lams, 2 / 9, 3, 3.0, c=rep["c_min"] + 1e-9)
    assert rep["pass"]
    zeros = check_edge_lambda_conditions([(n, 0) for n in range(5, 8)], [(n, 0.0) for n in range(5, 8)], 2 / 9, 3, 3.0)
    assert zeros["c_lambda"] == 0 and zeros["c_edges"] > 0
    even = range(6, 17, 2)
    rep = check_edge_lambda_conditions([(n, b4_edge_count(n)) for n in range(6, 17)],
                               [(n, closed_form_b4(n, 3.0)) for n in range(6, 17)], 3 / 8, 4, 3.0)
    assert math.isfinite(rep["c_min"]) and len(list(even)) == 6


def test_lambda_lower_bound():
    assert lambda_lower_bound(9, P3) == pytest.approx(18 * (1 - 2 * P3.eps_prime))
    assert lambda_lower_bound(9, P3) == pytest.approx(17.73, abs=5e-3)
    assert lambda_lower_bound(9, PeelParams(3.0, 1e-12, 2 / 9, 3)) == pytest.approx(2 / 9 * 81)
    lam9 = spectral_radius(turan_graph(9, 3, 3), 3.0).lam
    assert lam9 == pytest.approx(18)
    assert check_lambda_lower_bound([(9, lam9)], P3)["all_pass"]


def test_n0_bound():
    rep = n0_bound(10, PeelParams(3.0, 0.5, 2 / 9, 3))
    assert rep["log10_n0"] > 100
    vals = [n0_bound(10, PeelParams(3.0, e, pi, 3))["log_n0"]
            for e, pi in [(0.2, 0.3), (0.4, 0.5), (0.6, 0.7), (0.8, 0.9), (0.95, 0.99)]]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    with pytest.raises(InvalidInputError):
        n0_bound(10, PeelParams(1.0, 0.5, 0.2, 3))


def test_n0_small_finite():
    rep = n0_bound(3, PeelParams(1.2, 0.99, 1.0, 2))
    assert not rep["overflow"] and rep["n0"] == pytest.approx(math.exp(rep["log_n0"]))


def test_fact_grids():
    xs = np.linspace(0, 1, 2001)[:-1]
    for beta in np.linspace(0.01, 10, 200):
        assert min(bernoulli_power_gap(float(x), float(beta)) for x in xs) >= -1e-12
    assert min(exp_lower_gap(float(x)) for x in np.linspace(0, 0.5, 20001)[1:-1]) >= -1e-12
