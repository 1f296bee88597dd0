"""k-uniform hypergraphs, named constructions, and pattern colorings.

Vertices are always ``0..n-1``. Constructions that are usually written with
1-based labels (generalized triangle, F_4, F_7) are shifted down by one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError

Edge = tuple[int, ...]


def _canonical_edges(n: int, k: int, edges: Iterable[Iterable[int]]) -> tuple[Edge, ...]:
    out = set()
    for raw in edges:
        e = tuple(sorted(int(v) for v in raw))
        if len(e) != k:
            raise InvalidInputError(f"edge {list(raw)} has {len(e)} vertices, expected {k}")
        if len(set(e)) != k:
            raise InvalidInputError(f"edge {list(e)} repeats a vertex")
        if e[0] < 0 or e[-1] >= n:
            raise InvalidInputError(f"edge {list(e)} has a vertex outside [0, {n})")
        out.add(e)
    return tuple(sorted(out))


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored as sorted tuples in lexicographic order, so two
    hypergraphs compare equal exactly when they have the same labelled edges.
    """

    n: int
    k: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInputError("vertex count must be nonnegative")
        if self.k < 2:
            raise InvalidInputError("uniformity must be at least 2")
        object.__setattr__(self, "edges", _canonical_edges(self.n, self.k, self.edges))

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple[tuple[Edge, ...], ...]:
        """``incidence[v]`` lists the edges containing ``v``."""
        inc: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    def __repr__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, e={self.e})"

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return Hypergraph(self.n, self.k, tuple(edges))

    def add_isolated(self, count: int = 1) -> "Hypergraph":
        return Hypergraph(self.n + count, self.k, self.edges)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Image under the vertex map ``v -> perm[v]`` (``perm`` a permutation of range(n))."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidInputError("relabel needs a permutation of the vertex set")
        return Hypergraph(self.n, self.k, [[perm[v] for v in e] for e in self.edges])

    # serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        try:
            return cls(int(data["n"]), int(data["k"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad hypergraph document: {exc}") from exc

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines += [" ".join(map(str, e)) for e in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InvalidInputError("empty hypergraph text")
        try:
            n, k = (int(tok) for tok in lines[0].split())
            edges = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
        except ValueError as exc:
            raise InvalidInputError(f"bad hypergraph text: {exc}") from exc
        return cls(n, k, edges)


def new_hypergraph(n: int, k: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(n, k, tuple(edges))


def parse_hypergraph(text: str) -> Hypergraph:
    """Accept either the JSON document or the plain text format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return Hypergraph.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"bad JSON: {exc}") from exc
    return Hypergraph.from_text(text)


# ---------------------------------------------------------------------------
# patterns and colorings


@dataclass(frozen=True)
class Pattern:
    """A k-pattern ``([l], E)``: ``E`` is a set of k-multisets over ``range(l)``."""

    l: int
    k: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.l < 1 or self.k < 1:
            raise InvalidInputError("pattern needs l >= 1 and k >= 1")
        out = set()
        for raw in self.edges:
            m = tuple(sorted(int(c) for c in raw))
            if len(m) != self.k:
                raise InvalidInputError(f"multiset {list(raw)} does not have {self.k} elements")
            if m[0] < 0 or m[-1] >= self.l:
                raise InvalidInputError(f"multiset {list(raw)} uses a color outside [0, {self.l})")
            out.add(m)
        object.__setattr__(self, "edges", tuple(sorted(out)))

    @cached_property
    def submultisets(self) -> frozenset[Edge]:
        subs = set()
        for m in self.edges:
            for r in range(self.k + 1):
                subs.update(combinations(m, r))
        return frozenset(subs)

    def to_dict(self) -> dict:
        return {"l": self.l, "k": self.k, "edges": [list(m) for m in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Pattern":
        try:
            return cls(int(data["l"]), int(data["k"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad pattern document: {exc}") from exc


def complete_pattern(l: int, k: int) -> Pattern:
    """The pattern K^k_l: every k-subset of the l colors, no repetition."""
    return Pattern(l, k, tuple(combinations(range(l), k)))


def bipartite_like_pattern(half: int = 2) -> Pattern:
    """``({0,1}, {{0^half, 1^half}})``; colorable iff bipartite-like."""
    return Pattern(2, 2 * half, ((0,) * half + (1,) * half,))


def find_pattern_coloring(h: Hypergraph, p: Pattern) -> Optional[tuple[int, ...]]:
    """Return a homomorphism ``h -> p`` as a tuple of colors, or None.

    Exhaustive backtracking over vertices in decreasing-degree order. A
    partially colored edge survives only if its colors form a sub-multiset of
    some pattern multiset, which never discards a completable branch.
    """
    if h.k != p.k:
        raise InvalidInputError(f"hypergraph is {h.k}-uniform but pattern has {p.k}-multisets")
    if h.n == 0:
        return ()
    if h.e and not p.edges:
        return None
    order = sorted(range(h.n), key=lambda v: (-h.degrees[v], v))
    subs = p.submultisets
    colors = [-1] * h.n
    inc = h.incidence

    def ok(v: int) -> bool:
        for e in inc[v]:
            seen = tuple(sorted(colors[u] for u in e if colors[u] >= 0))
            if seen not in subs:
                return False
        return True

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(p.l):
            colors[v] = c
            if ok(v) and assign(i + 1):
                return True
        colors[v] = -1
        return False

    if not assign(0):
        return None
    return tuple(colors)


def is_homomorphism(h: Hypergraph, p: Pattern, colors: Sequence[int]) -> bool:
    if len(colors) != h.n:
        return False
    allowed = set(p.edges)
    return all(tuple(sorted(colors[v] for v in e)) in allowed for e in h.edges)


# ---------------------------------------------------------------------------
# degrees and vertex deletion


def degree(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.n:
        raise InvalidInputError(f"vertex {v} out of range for n={h.n}")
    return h.degrees[v]


def min_degree(h: Hypergraph) -> int:
    if h.n == 0:
        raise InvalidInputError("minimum degree of a hypergraph with no vertices")
    return min(h.degrees)


def induced(h: Hypergraph, s: Iterable[int]) -> Hypergraph:
    """``H[S]`` relabelled so that the i-th smallest element of ``S`` becomes ``i``."""
    keep = sorted(set(s))
    if keep and (keep[0] < 0 or keep[-1] >= h.n):
        raise InvalidInputError("induced subset has a vertex out of range")
    new = {v: i for i, v in enumerate(keep)}
    edges = [[new[v] for v in e] for e in h.edges if all(v in new for v in e)]
    return Hypergraph(len(keep), h.k, edges)


def remove_vertex(h: Hypergraph, v: int) -> tuple[Hypergraph, tuple[int, ...]]:
    """Delete ``v``; returns ``(H - v, old_labels)`` with ``old_labels[new] = old``."""
    if not 0 <= v < h.n:
        raise InvalidInputError(f"vertex {v} out of range for n={h.n}")
    keep = tuple(u for u in range(h.n) if u != v)
    return induced(h, keep), keep


# ---------------------------------------------------------------------------
# constructions


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(n, k, tuple(combinations(range(n), k)))


def part_sizes(n: int, l: int) -> list[int]:
    """Sizes ``floor((n+i-1)/l)`` for ``i = 1..l`` (nondecreasing)."""
    return [(n + i - 1) // l for i in range(1, l + 1)]


def parts_of(sizes: Sequence[int]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def complete_multipartite(sizes: Sequence[int], k: int) -> Hypergraph:
    parts = parts_of(sizes)
    edges = [e for S in combinations(parts, k) for e in product(*S)]
    return Hypergraph(sum(sizes), k, edges)


def turan_graph(n: int, l: int, k: int) -> Hypergraph:
    """The balanced complete l-partite k-graph T^k_l(n); part i gets the i-th label block."""
    if l < k:
        raise InvalidInputError(f"need l >= k, got l={l}, k={k}")
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    return complete_multipartite(part_sizes(n, l), k)


def turan_edge_count(n: int, l: int, k: int) -> int:
    if l < k or k < 2:
        raise InvalidInputError(f"need l >= k >= 2, got l={l}, k={k}")
    total = 0
    for S in combinations(part_sizes(n, l), k):
        p = 1
        for s in S:
            p *= s
        total += p
    return total


def falling_factorial(l: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= l - i
    return out


def turan_leading_term(n: int, l: int, k: int) -> float:
    if l < k or k < 2:
        raise InvalidInputError(f"need l >= k >= 2, got l={l}, k={k}")
    return falling_factorial(l, k) / (factorial(k) * l**k) * float(n) ** k


def bipartite_like_complete(n: int, k: int) -> Hypergraph:
    """B_{2k}(n): parts ``[0, n//2)`` and ``[n//2, n)``, every edge takes k from each side."""
    if n < 0 or k < 1:
        raise InvalidInputError("need n >= 0 and k >= 1")
    a = n // 2
    left, right = range(a), range(a, n)
    edges = [x + y for x in combinations(left, k) for y in combinations(right, k)]
    return Hypergraph(n, 2 * k, edges)


def b4_edge_count(n: int) -> int:
    return comb(n // 2, 2) * comb(n - n // 2, 2)


def expansion(g: Hypergraph, k: int) -> Hypergraph:
    """Enlarge every edge of a 2-graph by k-2 fresh vertices (disjoint across edges)."""
    if g.k != 2:
        raise InvalidInputError("expansion takes a 2-graph")
    if k < 3:
        raise InvalidInputError("expansion target uniformity must be at least 3")
    nxt = g.n
    edges = []
    for u, v in g.edges:
        edges.append((u, v, *range(nxt, nxt + k - 2)))
        nxt += k - 2
    return Hypergraph(nxt, k, edges)


def covered_pairs(h: Hypergraph) -> set[tuple[int, int]]:
    return {p for e in h.edges for p in combinations(e, 2)}


def extension(f: Hypergraph) -> Hypergraph:
    """Add an edge ``{u, v} + B_uv`` with fresh ``B_uv`` for every pair of ``f`` not inside an edge of ``f``."""
    k = f.k
    if k < 3:
        raise InvalidInputError("extension needs k >= 3")
    covered = covered_pairs(f)
    nxt = f.n
    edges = list(f.edges)
    for pair in combinations(range(f.n), 2):
        if pair in covered:
            continue
        edges.append((*pair, *range(nxt, nxt + k - 2)))
        nxt += k - 2
    return Hypergraph(nxt, k, edges)


def generalized_fan(k: int) -> Hypergraph:
    if k < 3:
        raise InvalidInputError("Fan^k needs k >= 3")
    return extension(Hypergraph(k + 1, k, [tuple(range(k))]))


def generalized_triangle(k: int) -> Hypergraph:
    """T_k on 2k-1 vertices: ``{1..k}, {1..k-1, k+1}, {k..2k-1}`` shifted to 0-based."""
    if k < 2:
        raise InvalidInputError("T_k needs k >= 2")
    base = tuple(range(k - 1))
    return Hypergraph(2 * k - 1, k, [base + (k - 1,), base + (k,), tuple(range(k - 1, 2 * k - 1))])


def f4() -> Hypergraph:
    """K_4^{3-}: edges 123, 124, 134."""
    return Hypergraph(4, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])


def book_f7() -> Hypergraph:
    """The 4-book with three pages: 1234, 1235, 1236, 4567."""
    return Hypergraph(7, 4, [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 5), (3, 4, 5, 6)])


def matching(k: int, t: int) -> Hypergraph:
    if k < 2 or t < 1:
        raise InvalidInputError("matching needs k >= 2 and t >= 1")
    return Hypergraph(k * t, k, [tuple(range(i * k, (i + 1) * k)) for i in range(t)])


def star_graph(t: int) -> Hypergraph:
    return Hypergraph(t + 1, 2, [(0, i) for i in range(1, t + 1)])


def hyperstar(k: int, t: int) -> Hypergraph:
    if k < 3 or t < 1:
        raise InvalidInputError("hyperstar needs k >= 3 and t >= 1")
    return expansion(star_graph(t), k)


def random_hypergraph(rng, n: int, k: int, p: float) -> Hypergraph:
    """Each k-subset of ``range(n)`` independently with probability p (``rng`` a numpy Generator)."""
    return Hypergraph(n, k, [e for e in combinations(range(n), k) if rng.random() < p])
