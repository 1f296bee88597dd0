"""Non-induced subhypergraph containment, family freeness, cancellativity."""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError
from .hypergraph import Edge, Hypergraph


def shadow_index(h: Hypergraph) -> frozenset[Edge]:
    """Every sorted subset (all sizes) of every edge of ``h``."""
    subs = set()
    for e in h.edges:
        for r in range(h.k + 1):
            subs.update(combinations(e, r))
    return frozenset(subs)


def _search_order(f: Hypergraph) -> list[int]:
    """Non-isolated F-vertices: highest degree first, then greedily stay adjacent to placed ones."""
    live = [v for v in range(f.n) if f.degrees[v]]
    placed: list[int] = []
    touched = set()
    remaining = set(live)
    while remaining:
        pool = [v for v in remaining if v in touched] or list(remaining)
        v = min(pool, key=lambda u: (-f.degrees[u], u))
        placed.append(v)
        remaining.discard(v)
        for e in f.incidence[v]:
            touched.update(e)
    return placed


def _embed(h: Hypergraph, f: Hypergraph, fixed: dict[int, int],
           shadow: frozenset[Edge]) -> Optional[dict[int, int]]:
    order = [v for v in _search_order(f) if v not in fixed]
    phi = dict(fixed)
    used = set(phi.values())
    hdeg, fdeg = h.degrees, f.degrees

    def feasible(v: int) -> bool:
        for e in f.incidence[v]:
            img = tuple(sorted(phi[u] for u in e if u in phi))
            if len(img) == h.k:
                if img not in h.edge_set:
                    return False
            elif img not in shadow:
                return False
        return True

    for v in fixed:
        if hdeg[fixed[v]] < fdeg[v] or not feasible(v):
            return None

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        need = fdeg[v]
        for w in range(h.n):
            if w in used or hdeg[w] < need:
                continue
            phi[v] = w
            used.add(w)
            if feasible(v) and extend(i + 1):
                return True
            used.discard(w)
            del phi[v]
        return False

    if not extend(0):
        return None
    # isolated F-vertices go to any unused H-vertices
    free = (w for w in range(h.n) if w not in used)
    for v in range(f.n):
        if v not in phi:
            w = next(free, None)
            if w is None:
                return None
            phi[v] = w
    return phi


def _check_uniformity(h: Hypergraph, f: Hypergraph) -> None:
    if h.k != f.k:
        raise InvalidInputError(f"uniformity mismatch: host is {h.k}-uniform, pattern graph {f.k}-uniform")


def contains_sub(h: Hypergraph, f: Hypergraph, shadow: Optional[frozenset] = None
                 ) -> Optional[tuple[int, ...]]:
    """Return an injective map ``V(f) -> V(h)`` sending edges to edges, or None.

    The search is exhaustive, so None proves ``h`` is f-free.
    """
    _check_uniformity(h, f)
    if f.n > h.n or f.e > h.e:
        return None
    phi = _embed(h, f, {}, shadow if shadow is not None else shadow_index(h))
    if phi is None:
        return None
    return tuple(phi[v] for v in range(f.n))


def contains_sub_through(h: Hypergraph, f: Hypergraph, edge: Sequence[int],
                         shadow: Optional[frozenset] = None) -> Optional[tuple[int, ...]]:
    """Like :func:`contains_sub` but only embeddings whose image uses ``edge``."""
    _check_uniformity(h, f)
    target = tuple(sorted(edge))
    if target not in h.edge_set or f.n > h.n or f.e > h.e:
        return None
    shadow = shadow if shadow is not None else shadow_index(h)
    seen = set()
    for fe in f.edges:
        for img in permutations(target):
            fixed = dict(zip(fe, img))
            key = tuple(sorted(fixed.items()))
            if key in seen:
                continue
            seen.add(key)
            phi = _embed(h, f, fixed, shadow)
            if phi is not None:
                return tuple(phi[v] for v in range(f.n))
    return None


def is_embedding(h: Hypergraph, f: Hypergraph, phi: Sequence[int]) -> bool:
    if len(phi) != f.n or len(set(phi)) != f.n:
        return False
    if any(not 0 <= w < h.n for w in phi):
        return False
    return all(tuple(sorted(phi[v] for v in e)) in h.edge_set for e in f.edges)


def is_family_free(h: Hypergraph, family: Iterable[Hypergraph]) -> bool:
    family = list(family)
    for f in family:
        _check_uniformity(h, f)
    shadow = shadow_index(h)
    return all(contains_sub(h, f, shadow) is None for f in family)


def cancellative_violation(h: Hypergraph) -> Optional[tuple[Edge, Edge, Edge]]:
    """Edges ``(A, B, C)`` with ``B != C`` and ``B ^ C`` inside ``A``, if any."""
    shadow = shadow_index(h)
    for b, c in combinations(h.edges, 2):
        diff = tuple(sorted(set(b) ^ set(c)))
        if len(diff) > h.k or diff not in shadow:
            continue
        for a in h.edges:
            if set(diff) <= set(a):
                return a, b, c
    return None


def is_cancellative(h: Hypergraph) -> bool:
    return cancellative_violation(h) is None
