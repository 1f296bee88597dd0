"""Exact Turán and spectral Turán numbers at desk scale.

Edges of ``K^k_n`` are decided in lexicographic order (include / exclude).
Freeness is maintained incrementally: after including an edge only the
embeddings that use that edge are searched. Witnesses are deduplicated by
:func:`canonical_form`.
"""

from __future__ import annotations

import hashlib
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from .containment import contains_sub_through, is_family_free, shadow_index
from .errors import InvalidInputError, SearchCapError
from .hypergraph import Hypergraph
from .spectral import SolverOptions, check_alpha, spectral_radius

EDGE_CAP = 64
EXACT_CANON_MAX_N = 10


@dataclass
class SearchResult:
    optimum: float
    witnesses: list[Hypergraph]
    nodes_explored: int
    complete: bool
    objective: str = "edges"
    classes_evaluated: int = 0
    nonconverged: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "optimum": self.optimum,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "nodes_explored": self.nodes_explored,
            "complete": self.complete,
            "classes_evaluated": self.classes_evaluated,
            "nonconverged": self.nonconverged,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# canonical form


def _refine(h: Hypergraph, colors: list[int]) -> list[int]:
    """Colour refinement: split cells by the multiset of co-edge colour patterns."""
    while True:
        sigs = []
        for v in range(h.n):
            around = sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in h.incidence[v])
            sigs.append((colors[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _encode(h: Hypergraph, perm: Sequence[int]) -> tuple:
    return tuple(sorted(tuple(sorted(perm[v] for v in e)) for e in h.edges))


def _exact_canon(h: Hypergraph) -> tuple:
    best = None

    def search(colors: list[int]):
        nonlocal best
        colors = _refine(h, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            code = _encode(h, colors)
            if best is None or code < best:
                best = code
            return
        # individualize each vertex of the first non-singleton cell in turn
        for v in target:
            split = [2 * c + (1 if c == colors[v] and u != v else 0) for u, c in enumerate(colors)]
            search(split)

    search([0] * h.n)
    return best


def _invariant_digest(h: Hypergraph) -> bytes:
    colors = _refine(h, [0] * h.n)
    hist = sorted((colors[v], h.degrees[v]) for v in range(h.n))
    edge_hist = sorted(tuple(sorted(colors[v] for v in e)) for e in h.edges)
    return hashlib.sha256(repr((hist, edge_hist)).encode()).digest()


def canonical_form(h: Hypergraph) -> bytes:
    """Byte string equal for two hypergraphs iff they are isomorphic (n <= 10).

    The code is the lexicographically least relabelled edge list over the
    leaves of an individualization-refinement search, so it is a true
    canonical form. Above ``EXACT_CANON_MAX_N`` vertices an invariant digest is
    returned instead (prefixed ``b"~"``); equal digests do not imply
    isomorphism and are only good for bucketing.
    """
    head = struct.pack(">HH", h.n, h.k)
    if h.n > EXACT_CANON_MAX_N:
        return b"~" + head + _invariant_digest(h)
    code = _exact_canon(h)
    body = b"".join(struct.pack(">H", v) for e in code for v in e)
    return b"=" + head + struct.pack(">I", len(code)) + body


def is_exact_form(form: bytes) -> bool:
    return form.startswith(b"=")


# ---------------------------------------------------------------------------
# enumeration


def _check_family(k: int, family: Sequence[Hypergraph]) -> None:
    for f in family:
        if f.k != k:
            raise InvalidInputError(f"forbidden graph is {f.k}-uniform, search is {k}-uniform")


def _check_cap(n: int, k: int, override: bool) -> int:
    if k < 2 or n < 0:
        raise InvalidInputError("need n >= 0 and k >= 2")
    m = comb(n, k)
    if m > EDGE_CAP and not override:
        raise SearchCapError(
            f"C({n},{k}) = {m} candidate edges exceeds the cap of {EDGE_CAP}; "
            "pass override=True (CLI: --override-cap) for a long run"
        )
    return m


class _Walker:
    """Include/exclude DFS over candidate edges keeping the host F-free."""

    def __init__(self, n: int, k: int, family: Sequence[Hypergraph]):
        self.n, self.k = n, k
        self.family = list(family)
        self.cands = list(combinations(range(n), k))
        self.nodes = 0

    def can_add(self, edges: list, e: tuple) -> bool:
        h = Hypergraph(self.n, self.k, edges + [e])
        shadow = shadow_index(h)
        return all(contains_sub_through(h, f, e, shadow) is None for f in self.family)

    def walk_max(self, edges: list, i: int, best: list, found: dict, emit_all: bool):
        """Branch and bound on edge count; ``found`` collects optimum graphs (or all, if emit_all)."""
        self.nodes += 1
        remaining = len(self.cands) - i
        if not emit_all and len(edges) + remaining < best[0]:
            return
        if i == len(self.cands):
            if emit_all:
                found.setdefault(len(edges), []).append(tuple(edges))
                return
            if len(edges) > best[0]:
                best[0] = len(edges)
                found.clear()
            if len(edges) == best[0]:
                found.setdefault(len(edges), []).append(tuple(edges))
            return
        e = self.cands[i]
        if self.can_add(edges, e):
            edges.append(e)
            self.walk_max(edges, i + 1, best, found, emit_all)
            edges.pop()
        self.walk_max(edges, i + 1, best, found, emit_all)


def _prefixes(cands: list, depth: int) -> list[tuple[bool, ...]]:
    depth = min(depth, len(cands))
    out = [()]
    for _ in range(depth):
        out = [p + (b,) for p in out for b in (True, False)]
    return out


def _run_prefix(args):
    n, k, family, prefix, emit_all = args
    w = _Walker(n, k, family)
    edges: list = []
    for take, e in zip(prefix, w.cands):
        if take:
            if not w.can_add(edges, e):
                return w.nodes, {}, -1
            edges.append(e)
    best = [-1]
    found: dict = {}
    w.walk_max(edges, len(prefix), best, found, emit_all)
    return w.nodes, found, best[0]


def _enumerate(n: int, k: int, family: Sequence[Hypergraph], emit_all: bool,
               threads: int) -> tuple[dict, int]:
    """Run the DFS, serially or over top-level prefixes; merged output is identical."""
    if threads <= 1:
        w = _Walker(n, k, family)
        best = [-1]
        found: dict = {}
        w.walk_max([], 0, best, found, emit_all)
        return found, w.nodes
    depth = 1
    while 2**depth < 4 * threads and depth < 6:
        depth += 1
    cands = list(combinations(range(n), k))
    jobs = [(n, k, list(family), p, emit_all) for p in _prefixes(cands, depth)]
    merged: dict = {}
    nodes = 0
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for nd, found, _ in pool.map(_run_prefix, jobs):
            nodes += nd
            for size, graphs in found.items():
                merged.setdefault(size, []).extend(graphs)
    if not emit_all and merged:
        top = max(merged)
        merged = {top: merged[top]}
    return merged, nodes


def _dedup(graphs: Iterable[Hypergraph]) -> list[Hypergraph]:
    seen: dict[bytes, Hypergraph] = {}
    for g in graphs:
        seen.setdefault(canonical_form(g), g)
    return [seen[c] for c in sorted(seen)]


def ex_search(n: int, k: int, family: Sequence[Hypergraph], override: bool = False,
              threads: int = 1) -> SearchResult:
    """Exact ``ex(n, family)`` with every extremal graph up to isomorphism."""
    family = list(family)
    _check_family(k, family)
    _check_cap(n, k, override)
    found, nodes = _enumerate(n, k, family, emit_all=False, threads=threads)
    top = max(found)
    witnesses = _dedup(Hypergraph(n, k, es) for es in found[top])
    for w in witnesses:
        if w.e != top or not is_family_free(w, family):
            raise AssertionError("search produced an invalid witness")
    return SearchResult(top, witnesses, nodes, True)


def free_graphs(n: int, k: int, family: Sequence[Hypergraph], override: bool = False,
                threads: int = 1) -> tuple[list[Hypergraph], int]:
    """Every labelled F-free k-graph on n vertices (plus node count)."""
    family = list(family)
    _check_family(k, family)
    _check_cap(n, k, override)
    found, nodes = _enumerate(n, k, family, emit_all=True, threads=threads)
    out = [Hypergraph(n, k, es) for size in sorted(found) for es in found[size]]
    return out, nodes


def _is_maximal(g: Hypergraph, family: Sequence[Hypergraph]) -> bool:
    for e in combinations(range(g.n), g.k):
        if e in g.edge_set:
            continue
        h = Hypergraph(g.n, g.k, g.edges + (e,))
        if all(contains_sub_through(h, f, e) is None for f in family):
            return False
    return True


def spex_search(n: int, k: int, family: Sequence[Hypergraph], alpha: float,
                opts: Optional[SolverOptions] = None, override: bool = False,
                maximal_only: bool = False, threads: int = 1) -> SearchResult:
    """``spex(n, family)``: the largest solver lambda over all F-free k-graphs on n vertices.

    Every free graph is enumerated, reduced to isomorphism classes, and each
    class is solved once. ``maximal_only`` restricts the solve to edge-maximal
    free graphs; lambda is monotone in the edge set so the optimum is
    unchanged, but tied non-maximal witnesses are not reported.
    """
    check_alpha(alpha)
    family = list(family)
    graphs, nodes = free_graphs(n, k, family, override, threads)
    classes = _dedup(graphs)
    notes = []
    if maximal_only:
        classes = [g for g in classes if _is_maximal(g, family)]
        notes.append("maximal-only: tied non-maximal witnesses may be omitted")
    opts = opts or SolverOptions()
    scored = []
    bad = 0
    for g in classes:
        if g.e == 0:
            scored.append((0.0, g))
            continue
        r = spectral_radius(g, alpha, opts)
        bad += not r.converged
        scored.append((r.lam, g))
    top = max(s for s, _ in scored)
    slack = 1e-6 * max(1.0, top)
    witnesses = [g for s, g in scored if s >= top - slack]
    if bad:
        notes.append(f"{bad} class(es) did not reach the residual tolerance")
    return SearchResult(top, witnesses, nodes, True, "lambda", len(classes), bad, notes)


def density_trend(family: Sequence[Hypergraph], k: int, n_range: Iterable[int],
                  override: bool = False, threads: int = 1) -> list[tuple[int, int, float]]:
    """Rows ``(n, ex(n), ex(n)/C(n,k))``; a finite sequence, no limit is claimed."""
    rows = []
    for n in n_range:
        if n < k:
            rows.append((n, 0, 0.0))
            continue
        ex = int(ex_search(n, k, family, override, threads).optimum)
        rows.append((n, ex, ex / comb(n, k)))
    return rows


def enumerate_all(n: int, k: int) -> Iterable[Hypergraph]:
    """Every labelled k-graph on n vertices (2^C(n,k) of them)."""
    cands = list(combinations(range(n), k))
    for mask in range(1 << len(cands)):
        yield Hypergraph(n, k, [cands[i] for i in range(len(cands)) if mask >> i & 1])


def unrestricted_single_edge_lambda(k: int, alpha: float) -> float:
    return factorial(k) * k ** (-k / alpha)
