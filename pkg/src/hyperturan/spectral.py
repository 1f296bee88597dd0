"""alpha-spectral radius of a k-graph and its closed forms.

``lambda_alpha(H)`` is the maximum of the Lagrangian polynomial
``P_H(x) = k! * sum_e prod_{v in e} x_v`` over nonnegative ``x`` with
``||x||_alpha = 1``. The solver is a shifted fixed-point iteration on the
Lagrange stationarity condition

    lambda * x_i^(alpha-1) = (k-1)! * sum_{e ni i} prod_{u in e - i} x_u

and every returned value is P evaluated at a feasible point, hence a
certified lower bound; the residual of the condition above is reported
alongside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Optional

import numpy as np

from .errors import InvalidInputError
from .hypergraph import Hypergraph, falling_factorial

SOLVER_VERSION = "shifted-fixed-point/1"
ALPHA_GUARD = 1e-9
TINY = 1e-150


@dataclass
class SolverOptions:
    tol: float = 1e-10
    max_iter: int = 200_000
    starts: int = 8
    seed: int = 0xA1FA
    shift: Optional[float] = None  # None = adaptive, shift_scale * current P(x)
    shift_scale: float = 1.0
    rel_change: float = 1e-13


@dataclass
class SpectralResult:
    lam: float
    vector: np.ndarray
    alpha: float
    residual: float
    iterations: int
    starts_used: int
    converged: bool
    edges: int = 0
    components: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "alpha": self.alpha,
            "vector": [float(v) for v in self.vector],
            "residual": self.residual,
            "iterations": self.iterations,
            "starts_used": self.starts_used,
            "converged": self.converged,
            "edges": self.edges,
            "components": self.components,
            "solver_version": SOLVER_VERSION,
        }


def check_alpha(alpha: float) -> None:
    if not alpha > 1 + ALPHA_GUARD:
        raise InvalidInputError(f"alpha must exceed 1, got {alpha}")


def lp_normalize(x: np.ndarray, alpha: float) -> np.ndarray:
    norm = np.sum(x**alpha) ** (1.0 / alpha)
    if norm == 0:
        return x
    return x / norm


def _as_vector(h: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (h.n,):
        raise InvalidInputError(f"vector has shape {x.shape}, expected ({h.n},)")
    return x


def _edge_array(h: Hypergraph) -> np.ndarray:
    if not h.edges:
        return np.zeros((0, h.k), dtype=np.intp)
    return np.asarray(h.edges, dtype=np.intp)


def _edge_products(E: np.ndarray, x: np.ndarray) -> np.ndarray:
    vals = x[E]
    pos = vals[vals > 0]
    if pos.size and pos.min() < TINY:
        with np.errstate(divide="ignore"):
            return np.exp(np.log(vals).sum(axis=1))
    return vals.prod(axis=1)


def lagrangian_poly(h: Hypergraph, x) -> float:
    """``k! * sum_e prod_{v in e} x_v`` with compensated summation."""
    x = _as_vector(h, x)
    if not h.edges:
        return 0.0
    prods = _edge_products(_edge_array(h), x)
    return factorial(h.k) * math.fsum(prods.tolist())


def _others_sum(E: np.ndarray, x: np.ndarray, n: int) -> np.ndarray:
    """``sum_{e ni i} prod_{u in e - i} x_u`` for every vertex i (no division, zero-safe)."""
    m, k = E.shape
    vals = x[E]
    pre = np.ones((m, k))
    suf = np.ones((m, k))
    for j in range(1, k):
        pre[:, j] = pre[:, j - 1] * vals[:, j - 1]
        suf[:, k - 1 - j] = suf[:, k - j] * vals[:, k - j]
    others = pre * suf
    out = np.zeros(n)
    for j in range(k):
        out += np.bincount(E[:, j], weights=others[:, j], minlength=n)
    return out


def eigen_residual(h: Hypergraph, alpha: float, lam: float, x) -> float:
    """``max_i |lam * x_i^(alpha-1) - (k-1)! * sum_{e ni i} x_{e - i}|``."""
    x = _as_vector(h, x)
    if np.any(x < 0):
        raise InvalidInputError("eigen_residual needs a nonnegative vector")
    if h.n == 0:
        return 0.0
    g = factorial(h.k - 1) * _others_sum(_edge_array(h), x, h.n)
    return float(np.max(np.abs(lam * x ** (alpha - 1) - g)))


def components(h: Hypergraph) -> list[list[int]]:
    """Vertex sets of connected components that carry at least one edge."""
    parent = list(range(h.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in h.edges:
        r = find(e[0])
        for v in e[1:]:
            s = find(v)
            if s != r:
                parent[s] = r
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        if h.degrees[v]:
            groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass
class _Run:
    lam: float
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool


def _iterate(E: np.ndarray, n: int, k: int, alpha: float, x0: np.ndarray,
             sigma: float, opts: SolverOptions) -> _Run:
    kf = factorial(k - 1)
    inv = 1.0 / (alpha - 1.0)
    x = lp_normalize(np.asarray(x0, dtype=float), alpha)
    lam_prev = -1.0
    best = None
    for it in range(1, opts.max_iter + 1):
        g = kf * _others_sum(E, x, n)
        lam = float(x @ g)
        xa = x ** (alpha - 1.0)
        res = float(np.max(np.abs(lam * xa - g)))
        if best is None or lam > best.lam:
            best = _Run(lam, x, res, it, False)
        if res <= opts.tol and abs(lam - lam_prev) <= opts.rel_change * max(lam, 1.0):
            return _Run(lam, x, res, it, True)
        lam_prev = lam
        s = sigma if sigma is not None else opts.shift_scale * max(lam, 1e-300)
        y = (g + s * xa) ** inv
        if not np.any(y > 0):
            return _Run(0.0, x, res, it, False)
        x = lp_normalize(y, alpha)
    best.iterations = opts.max_iter
    return best


def _pick(runs: list[_Run]) -> _Run:
    """Largest lambda; near-ties go to the lexicographically smallest rounded vector."""
    top = max(r.lam for r in runs)
    close = [r for r in runs if r.lam >= top - 1e-12 * max(1.0, abs(top))]
    return min(close, key=lambda r: tuple(np.round(r.x, 12)))


def _solve_component(h: Hypergraph, verts: list[int], alpha: float, opts: SolverOptions,
                     rng: np.random.Generator, init: Optional[np.ndarray]) -> tuple[_Run, int]:
    index = {v: i for i, v in enumerate(verts)}
    E = np.asarray([[index[v] for v in e] for e in h.edges if e[0] in index], dtype=np.intp)
    n = len(verts)
    sigma = opts.shift
    starts = [np.ones(n)]
    if init is not None:
        sub = np.asarray(init, dtype=float)[verts]
        if np.any(sub > 0):
            starts.insert(0, sub)
    while len(starts) < max(opts.starts, 1) + (init is not None):
        starts.append(rng.random(n) + 1e-3)
    runs = [_iterate(E, n, h.k, alpha, s, sigma, opts) for s in starts]
    return _pick(runs), len(runs)


def spectral_radius(h: Hypergraph, alpha: float, opts: Optional[SolverOptions] = None,
                    init=None) -> SpectralResult:
    """Multi-start estimate of ``lambda_alpha(h)`` with a residual certificate.

    Components are solved separately. For ``alpha <= k`` the maximizer sits on
    a single component; for ``alpha > k`` the optimal split of mass between
    components with radii ``l_j`` is ``t_j ~ l_j^(alpha/(alpha-k))`` and the
    combined radius is ``(sum l_j^q)^(1/q)`` with ``q = alpha/(alpha-k)``.
    ``init`` (an optional nonnegative vector on V(h)) is tried as an extra start.
    """
    check_alpha(alpha)
    if h.n == 0:
        raise InvalidInputError("spectral radius of a hypergraph with no vertices")
    opts = opts or SolverOptions()
    rng = np.random.default_rng(opts.seed)
    comps = components(h)
    x = np.zeros(h.n)
    if not comps:
        x[:] = h.n ** (-1.0 / alpha)
        return SpectralResult(0.0, x, alpha, 0.0, 0, 0, True, 0, 0)

    solved = []
    used = iters = 0
    for verts in comps:
        run, m = _solve_component(h, verts, alpha, opts, rng, init)
        solved.append((verts, run))
        used += m
        iters += run.iterations

    k = h.k
    if alpha > k and len(solved) > 1:
        q = alpha / (alpha - k)
        logs = np.array([math.log(r.lam) if r.lam > 0 else -np.inf for _, r in solved])
        top = logs.max()
        w = np.exp(q * (logs - top))
        t = w / w.sum()
        for (verts, run), tj in zip(solved, t):
            x[verts] = tj ** (1.0 / alpha) * run.x
        conv = all(r.converged for _, r in solved)
    else:
        lams = [r.lam for _, r in solved]
        top = max(lams)
        j = next(i for i, l in enumerate(lams) if l >= top - 1e-12 * max(1.0, top))
        verts, run = solved[j]
        x[verts] = run.x
        conv = run.converged

    lam = lagrangian_poly(h, x)
    res = eigen_residual(h, alpha, lam, x)
    conv = conv and res <= opts.tol
    return SpectralResult(lam, x, alpha, res, iters, used, conv, h.e, len(comps))


# ---------------------------------------------------------------------------
# closed forms and bounds


def closed_form_multipartite(n: int, l: int, k: int, alpha: float) -> float:
    """``(l)_k / l^k * n^(k - k/alpha)``, the value of ``lambda_alpha(T^k_l(n))`` when l | n."""
    check_alpha(alpha)
    if l < k or k < 2:
        raise InvalidInputError(f"need l >= k >= 2, got l={l}, k={k}")
    if n % l:
        raise InvalidInputError(f"{l} does not divide {n}; the formula is only an upper bound")
    return falling_factorial(l, k) / l**k * float(n) ** (k - k / alpha)


def multipartite_upper_bound(n: int, l: int, k: int, alpha: float) -> float:
    check_alpha(alpha)
    return falling_factorial(l, k) / l**k * float(n) ** (k - k / alpha)


def b4_profile(n: int, t: int, alpha: float) -> float:
    """``C(t,2) C(n-t,2) t^(-2/alpha) (n-t)^(-2/alpha)``."""
    return comb(t, 2) * comb(n - t, 2) * float(t) ** (-2 / alpha) * float(n - t) ** (-2 / alpha)


def closed_form_b4(n: int, alpha: float) -> float:
    """``lambda_alpha(B_4(n)) = 4! * 2^(-4/alpha) * f(floor(n/2))``."""
    check_alpha(alpha)
    if n < 4:
        raise InvalidInputError("closed_form_b4 needs n >= 4")
    return 24.0 * 2.0 ** (-4 / alpha) * b4_profile(n, n // 2, alpha)


def b4_even_bound(n: int, alpha: float) -> float:
    """``(3/8) (n-2)^2 n^(2-4/alpha)``; equals closed_form_b4 exactly when n is even."""
    check_alpha(alpha)
    return 0.375 * (n - 2) ** 2 * float(n) ** (2 - 4 / alpha)


def average_bound(h: Hypergraph, alpha: float) -> float:
    """``k! n^(-k/alpha) e(h)``: P at the normalized all-ones vector."""
    check_alpha(alpha)
    if h.n == 0:
        raise InvalidInputError("average bound needs at least one vertex")
    return factorial(h.k) * h.n ** (-h.k / alpha) * h.e


def _elementary(vals: np.ndarray, r: int) -> float:
    e = np.zeros(r + 1)
    e[0] = 1.0
    for v in vals:
        e[1:] = e[1:] + v * e[:-1]
    return float(e[r])


def multipartite_reduced(sizes, k: int, alpha: float, tol: float = 1e-13,
                         max_iter: int = 100_000) -> tuple[float, np.ndarray]:
    """lambda and the part-constant eigenvector of a complete multipartite k-graph.

    Vertices of one part share an entry (transpositions inside a part are
    automorphisms), so the problem reduces to one unknown ``y_i`` per part:
    ``lambda y_i^(alpha-1) = (k-1)! e_{k-1}(s_j y_j : j != i)`` with
    ``sum_i s_i y_i^alpha = 1``. Returns ``(lambda, x)`` with x expanded to
    vertices in part order.
    """
    check_alpha(alpha)
    s = np.asarray(sizes, dtype=float)
    l = len(s)
    y = np.where(s > 0, 1.0, 0.0)
    kf = factorial(k - 1)

    def grad(y):
        sy = s * y
        return np.array([kf * _elementary(np.delete(sy, i), k - 1) for i in range(l)])

    lam = 0.0
    for _ in range(max_iter):
        y = y / np.sum(s * y**alpha) ** (1 / alpha)
        g = grad(y)
        lam_new = float(np.sum(s * y * g))
        y_new = (g + lam_new * y ** (alpha - 1)) ** (1 / (alpha - 1))
        y_new = y_new / np.sum(s * y_new**alpha) ** (1 / alpha)
        done = np.max(np.abs(y_new - y)) < tol and abs(lam_new - lam) <= tol * max(1.0, lam_new)
        y, lam = y_new, lam_new
        if done:
            break
    g = grad(y)
    lam = float(np.sum(s * y * g))
    return lam, np.repeat(y, np.asarray(sizes, dtype=int))
