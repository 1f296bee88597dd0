from math import comb, factorial

import pytest

from hyperturan.containment import is_family_free
from hyperturan.errors import InvalidInputError, SearchCapError
from hyperturan.hypergraph import (
    Hypergraph,
    book_f7,
    complete_hypergraph,
    f4,
    generalized_triangle,
    matching,
    turan_graph,
)
from hyperturan.search import (
    canonical_form,
    density_trend,
    enumerate_all,
    ex_search,
    free_graphs,
    is_exact_form,
    spex_search,
    unrestricted_single_edge_lambda,
)
from hyperturan.spectral import average_bound, spectral_radius

T3 = generalized_triangle(3)
FT = [f4(), T3]


def test_ex_examples():
    r = ex_search(5, 3, FT)
    assert r.optimum == 4 and len(r.witnesses) == 1
    assert canonical_form(r.witnesses[0]) == canonical_form(turan_graph(5, 3, 3))
    assert ex_search(5, 3, [Hypergraph(3, 3, [[0, 1, 2]])]).optimum == 0


def test_ex_n6_bollobas():
    r = ex_search(6, 3, FT)
    assert r.optimum == 8
    assert [canonical_form(w) for w in r.witnesses] == [canonical_form(turan_graph(6, 3, 3))]
    assert r.nodes_explored <= 2**20


def test_ex_empty_family():
    r = ex_search(5, 3, [])
    assert r.optimum == comb(5, 3) and r.witnesses == [complete_hypergraph(5, 3)]


def test_cap_and_validation():
    with pytest.raises(SearchCapError):
        ex_search(9, 3, FT)
    with pytest.raises(InvalidInputError):
        ex_search(5, 3, [book_f7()])


def _plain(n, k, family):
    best, wit = -1, []
    for h in enumerate_all(n, k):
        if not is_family_free(h, family):
            continue
        if h.e > best:
            best, wit = h.e, [h]
        elif h.e == best:
            wit.append(h)
    return best, {canonical_form(w) for w in wit}


@pytest.mark.parametrize("n,k,family", [
    (5, 3, FT),
    (5, 3, [T3]),
    (5, 3, [Hypergraph(4, 3, [[0, 1, 2], [0, 1, 3]])]),
    (5, 3, [matching(3, 2)]),
    (6, 4, [book_f7()]),
    (6, 4, [Hypergraph(5, 4, [[0, 1, 2, 3], [0, 1, 2, 4]])]),
])
def test_branch_and_bound_matches_plain(n, k, family):
    best, forms = _plain(n, k, family)
    r = ex_search(n, k, family)
    assert r.optimum == best
    assert {canonical_form(w) for w in r.witnesses} == forms


def test_threads_deterministic():
    a = ex_search(6, 3, FT, threads=1)
    b = ex_search(6, 3, FT, threads=3)
    assert a.optimum == b.optimum
    assert [w.edges for w in a.witnesses] == [w.edges for w in b.witnesses]


def test_monotonicity_in_n_and_family():
    prev = 0
    for n in range(3, 7):
        ex_ft = ex_search(n, 3, FT).optimum
        ex_t = ex_search(n, 3, [T3]).optimum
        assert ex_ft <= ex_t and ex_ft >= prev
        prev = ex_ft


def test_witnesses_distinct_and_free():
    r = ex_search(5, 3, [Hypergraph(4, 3, [[0, 1, 2], [0, 1, 3]])])
    forms = [canonical_form(w) for w in r.witnesses]
    assert len(forms) == len(set(forms))
    assert all(is_family_free(w, r_f) for w in r.witnesses
               for r_f in [[Hypergraph(4, 3, [[0, 1, 2], [0, 1, 3]])]])


def test_spex_examples():
    r = spex_search(4, 4, [book_f7()], 4)
    assert r.optimum == pytest.approx(6.0)
    assert [w.e for w in r.witnesses] == [1]
    r = spex_search(5, 3, FT, 3)
    assert r.complete and r.optimum >= 4.8 - 1e-9
    assert r.optimum >= factorial(3) * 5 ** (-1) * ex_search(5, 3, FT).optimum - 1e-9
    r = spex_search(3, 3, [], 2)
    assert r.optimum == pytest.approx(unrestricted_single_edge_lambda(3, 2))


def test_spex_maximal_only_same_optimum():
    a = spex_search(5, 3, [T3], 2)
    b = spex_search(5, 3, [T3], 2, maximal_only=True)
    assert a.optimum == pytest.approx(b.optimum, rel=1e-12)
    assert b.classes_evaluated <= a.classes_evaluated


def test_free_graphs_count():
    graphs, _ = free_graphs(5, 3, FT)
    brute = [h for h in enumerate_all(5, 3) if is_family_free(h, FT)]
    assert len(graphs) == len(brute)


def test_trend_examples():
    rows = density_trend(FT, 3, range(4, 7))
    assert rows[-1] == (6, 8, pytest.approx(0.4))
    single = Hypergraph(3, 3, [[0, 1, 2]])
    assert all(d == 0 for _, _, d in density_trend([single], 3, range(3, 6)))
    wider = density_trend([T3], 3, range(5, 7))
    narrow = density_trend(FT, 3, range(5, 7))
    assert all(w[2] >= v[2] for w, v in zip(wider, narrow))


def test_canonical_form():
    h = turan_graph(6, 3, 3)
    g = h.relabel([3, 5, 0, 4, 1, 2])
    assert canonical_form(h) == canonical_form(g)
    assert canonical_form(f4()) != canonical_form(T3)
    assert canonical_form(Hypergraph(5, 3, [])) == canonical_form(Hypergraph(5, 3, []))
    assert is_exact_form(canonical_form(h))
    assert not is_exact_form(canonical_form(turan_graph(11, 3, 3)))


def test_canonical_form_separates_classes():
    # number of isomorphism classes of 3-graphs on 5 vertices is 34
    forms = {canonical_form(h) for h in enumerate_all(5, 3)}
    assert len(forms) == 34


def test_spex_bounds_edge_extremal():
    for n, fam in [(5, FT), (5, [T3])]:
        ex = ex_search(n, 3, fam)
        sp = spex_search(n, 3, fam, 2.0)
        assert sp.optimum >= max(spectral_radius(w, 2.0).lam for w in ex.witnesses) - 1e-9
        assert sp.optimum >= average_bound(ex.witnesses[0], 2.0) - 1e-9
