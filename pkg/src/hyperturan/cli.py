"""Command-line front end.

Exit status: 0 success, 1 invalid input or flags, 2 solver did not converge,
3 search refused by the edge cap, 4 a ``verify`` check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .containment import cancellative_violation, contains_sub
from .errors import InvalidInputError, SearchCapError
from .hypergraph import (
    Hypergraph,
    Pattern,
    bipartite_like_complete,
    bipartite_like_pattern,
    book_f7,
    complete_hypergraph,
    complete_pattern,
    expansion,
    extension,
    f4,
    find_pattern_coloring,
    generalized_fan,
    generalized_triangle,
    hyperstar,
    matching,
    parse_hypergraph,
    star_graph,
    turan_graph,
)
from .search import density_trend, ex_search, spex_search
from .spectral import SolverOptions, spectral_radius
from .stability import PeelParams, peel
from .verify import SUITES

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_CAP, EXIT_CHECK = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# graph and pattern inputs

_BUILDERS: dict[str, tuple[int, Callable[..., Hypergraph]]] = {
    "turan": (3, turan_graph),
    "b4": (1, lambda n: bipartite_like_complete(n, 2)),
    "bipartite-like": (2, bipartite_like_complete),
    "complete": (2, complete_hypergraph),
    "fan": (1, generalized_fan),
    "triangle": (1, generalized_triangle),
    "f4": (0, f4),
    "f7": (0, book_f7),
    "matching": (2, matching),
    "hyperstar": (2, hyperstar),
    "star": (1, star_graph),
}


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InvalidInputError(f"expected an integer, got {tok!r}") from None


def build_named(tokens: Sequence[str]) -> tuple[Hypergraph, list[str]]:
    """Consume one construction from ``tokens``; returns the graph and leftover tokens."""
    if not tokens:
        raise InvalidInputError("missing construction name")
    name, rest = tokens[0], list(tokens[1:])
    if name == "expansion":
        if not rest:
            raise InvalidInputError("expansion needs a target k and a base graph")
        k = _int(rest[0])
        base, rest = _graph_from(rest[1:])
        return expansion(base, k), rest
    if name == "extension":
        base, rest = _graph_from(rest)
        return extension(base), rest
    if name not in _BUILDERS:
        raise InvalidInputError(f"unknown construction {name!r}")
    arity, fn = _BUILDERS[name]
    if len(rest) < arity:
        raise InvalidInputError(f"{name} needs {arity} integer argument(s)")
    args = [_int(t) for t in rest[:arity]]
    return fn(*args), rest[arity:]


def read_graph_file(path: str) -> Hypergraph:
    if path == "-":
        return parse_hypergraph(sys.stdin.read())
    p = Path(path)
    if not p.is_file():
        raise InvalidInputError(f"no such file: {path}")
    return parse_hypergraph(p.read_text())


def _graph_from(tokens: Sequence[str]) -> tuple[Hypergraph, list[str]]:
    if not tokens:
        raise InvalidInputError("missing hypergraph (file path, '-', or construction)")
    if tokens[0] in _BUILDERS or tokens[0] in ("expansion", "extension"):
        return build_named(tokens)
    return read_graph_file(tokens[0]), list(tokens[1:])


def resolve_graph(tokens: Sequence[str]) -> Hypergraph:
    g, rest = _graph_from(tokens)
    if rest:
        raise InvalidInputError(f"unexpected extra arguments: {' '.join(rest)}")
    return g


def resolve_pattern(tokens: Sequence[str]) -> Pattern:
    if not tokens:
        raise InvalidInputError("missing pattern")
    if tokens[0] == "complete" and len(tokens) == 3:
        return complete_pattern(_int(tokens[1]), _int(tokens[2]))
    if tokens[0] == "bipartite-like" and len(tokens) <= 2:
        return bipartite_like_pattern(_int(tokens[1]) if len(tokens) == 2 else 2)
    if len(tokens) == 1:
        p = Path(tokens[0])
        if p.is_file():
            try:
                return Pattern.from_dict(json.loads(p.read_text()))
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"bad pattern JSON: {exc}") from exc
    raise InvalidInputError("pattern must be 'complete L K', 'bipartite-like [HALF]', or a JSON file")


def _host(args) -> Hypergraph:
    if args.construct:
        if args.graph:
            raise InvalidInputError("give either a file or --construct, not both")
        return build_named_all(args.construct)
    if not args.graph:
        raise InvalidInputError("no hypergraph given")
    return resolve_graph(args.graph)


def build_named_all(tokens):
    g, rest = build_named(tokens)
    if rest:
        raise InvalidInputError(f"unexpected extra arguments: {' '.join(rest)}")
    return g


# ---------------------------------------------------------------------------
# output


def _clean(obj):
    """Round floats to 12 significant digits; non-finite floats become null."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _clean(obj.item())
    return obj


def _emit(args, doc=None, text: Optional[str] = None) -> None:
    out = text if text is not None else json.dumps(_clean(doc), indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def _opts(args) -> SolverOptions:
    return SolverOptions(tol=args.tol, max_iter=args.max_iter, starts=args.starts,
                         seed=args.seed, shift=args.shift)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    g = build_named_all(args.tokens)
    if args.format == "text":
        _emit(args, text=g.to_text())
    else:
        _emit(args, g.to_dict())
    return EXIT_OK


def cmd_lambda(args) -> int:
    g = _host(args)
    r = spectral_radius(g, args.alpha, _opts(args))
    _emit(args, {**r.to_dict(), "n": g.n, "k": g.k})
    return EXIT_OK if r.converged else EXIT_SOLVER


def cmd_free(args) -> int:
    host = resolve_graph(args.host)
    found = []
    for i, tokens in enumerate(args.forbid or []):
        f = resolve_graph(tokens)
        phi = contains_sub(host, f)
        if phi is not None:
            found.append({"forbidden": i, "name": " ".join(tokens), "embedding": list(phi)})
    _emit(args, {"free": not found, "contained": found, "n": host.n, "k": host.k})
    return EXIT_OK


def cmd_cancellative(args) -> int:
    g = _host(args)
    bad = cancellative_violation(g)
    _emit(args, {"cancellative": bad is None, "violation": None if bad is None else [list(e) for e in bad]})
    return EXIT_OK


def cmd_color(args) -> int:
    g = _host(args)
    p = resolve_pattern(args.pattern)
    col = find_pattern_coloring(g, p)
    _emit(args, {"colorable": col is not None, "coloring": None if col is None else list(col),
                 "pattern": p.to_dict()})
    return EXIT_OK


def _family(args) -> list[Hypergraph]:
    return [resolve_graph(tokens) for tokens in (args.forbid or [])]


def cmd_ex(args) -> int:
    r = ex_search(args.n, args.k, _family(args), args.override_cap, args.threads)
    _emit(args, r.to_dict())
    return EXIT_OK


def cmd_spex(args) -> int:
    r = spex_search(args.n, args.k, _family(args), args.alpha, _opts(args), args.override_cap,
                    maximal_only=args.unsafe_prune, threads=args.threads)
    _emit(args, r.to_dict())
    return EXIT_SOLVER if r.nonconverged else EXIT_OK


def cmd_trend(args) -> int:
    rows = density_trend(_family(args), args.k, range(args.n_min, args.n_max + 1),
                         args.override_cap, args.threads)
    if args.format == "csv":
        _emit(args, text=_csv(["n", "ex", "density"], rows))
    else:
        _emit(args, {"k": args.k, "rows": [{"n": n, "ex": e, "density": d} for n, e, d in rows]})
    return EXIT_OK


def cmd_peel(args) -> int:
    g = _host(args)
    params = PeelParams(args.alpha, args.epsilon, args.pi, g.k)
    tr = peel(g, params, args.floor, _opts(args))
    if args.format == "csv":
        _emit(args, text=tr.to_csv())
    elif args.format == "jsonl":
        _emit(args, text=tr.to_jsonl())
    else:
        _emit(args, tr.to_dict())
    return EXIT_SOLVER if tr.terminated_reason == "solver-failure" else EXIT_OK


def cmd_verify(args) -> int:
    checks = SUITES[args.suite]()
    failed = [c.name for c in checks if not c.passed]
    _emit(args, {"suite": args.suite, "passed": not failed, "failed": failed,
                 "checks": [c.to_dict() for c in checks]})
    if failed:
        print(f"verify {args.suite}: failed check(s): {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, solver: bool = False, formats=("json",)) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("-o", "--output", help="write the result document here instead of stdout")
    if solver:
        p.add_argument("--alpha", type=float, default=2.0)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-iter", type=int, default=200_000)
        p.add_argument("--starts", type=int, default=8)
        p.add_argument("--seed", type=int, default=0xA1FA)
        p.add_argument("--shift", type=float, default=None, help="fixed shift (default: adaptive)")


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="*", help="hypergraph file ('-' for stdin) or a construction")
    p.add_argument("--construct", nargs="+", metavar="TOKEN", help="named construction, e.g. turan 6 3 3")


def _search_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--forbid", nargs="+", action="append", metavar="TOKEN",
                   help="forbidden graph (file or construction); repeatable")
    p.add_argument("--override-cap", action="store_true", help="allow more than 64 candidate edges")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperturan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("construct", help="build a named hypergraph")
    s.add_argument("tokens", nargs="+", help="e.g. turan 6 3 3 | b4 8 | fan 3 | expansion 3 complete 4 2")
    _common(s, formats=("json", "text"))
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("lambda", help="alpha-spectral radius with residual certificate")
    _graph_args(s)
    _common(s, solver=True)
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("free", help="test family-freeness by exact containment")
    s.add_argument("--host", nargs="+", required=True, metavar="TOKEN")
    s.add_argument("--forbid", nargs="+", action="append", metavar="TOKEN")
    _common(s)
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("cancellative", help="test the cancellative property")
    _graph_args(s)
    _common(s)
    s.set_defaults(func=cmd_cancellative)

    s = sub.add_parser("color", help="find a homomorphism into a pattern")
    _graph_args(s)
    s.add_argument("--pattern", nargs="+", required=True, metavar="TOKEN")
    _common(s)
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("ex", help="exact Turán number by branch and bound")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    _search_args(s)
    _common(s)
    s.set_defaults(func=cmd_ex)

    s = sub.add_parser("spex", help="exact spectral Turán number by enumeration")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    _search_args(s)
    s.add_argument("--unsafe-prune", action="store_true",
                   help="solve only edge-maximal free graphs (same optimum, may drop tied witnesses)")
    _common(s, solver=True)
    s.set_defaults(func=cmd_spex)

    s = sub.add_parser("trend", help="finite-n densities ex(n)/C(n,k)")
    s.add_argument("k", type=int)
    s.add_argument("n_min", type=int)
    s.add_argument("n_max", type=int)
    _search_args(s)
    _common(s, formats=("json", "csv"))
    s.set_defaults(func=cmd_trend)

    s = sub.add_parser("peel", help="minimum-entry vertex peeling")
    _graph_args(s)
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--pi", type=float, required=True)
    s.add_argument("--floor", type=int, required=True)
    _common(s, solver=True, formats=("json", "jsonl", "csv"))
    s.set_defaults(func=cmd_peel)

    s = sub.add_parser("verify", help="run a named check suite")
    s.add_argument("suite", choices=sorted(SUITES))
    _common(s)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"hyperturan: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidInputError as exc:
        print(f"hyperturan: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchCapError as exc:
        print(f"hyperturan: {exc}", file=sys.stderr)
        return EXIT_CAP


def main() -> None:
    sys.exit(run())
