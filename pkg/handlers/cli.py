"""Command-line front end.

Exit codes: ``0`` equivalent (or success), ``1`` distinct, ``2`` unknown,
``3`` I/O failure, ``4`` parse error, ``5`` invalid input or domain error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv

from homotopy.decide import (
    DecisionOutcome,
    Verdict,
    closure_equivalent,
    gclosure_equivalent,
)
from homotopy.errors import InputError, LinkHomotopyError, ParseError
from homotopy.scheme import ComponentDecomposition, invariant_count
from homotopy.stringlink import ColoredStringLink, realize

from handlers import render
from handlers.dsl import parse_graph, parse_link
from handlers.metrics import decisions, invariant_requests, search_nodes
from utils.cache import cached_vector, default_cache
from utils.config import get_settings
from utils.decision_log import record_decision
from utils.logger import configure_logging

logger = logging.getLogger(__name__)

EXIT_EQUIVALENT = 0
EXIT_DISTINCT = 1
EXIT_UNKNOWN = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_INVALID = 5

_VERDICT_EXIT = {
    Verdict.EQUIVALENT: EXIT_EQUIVALENT,
    Verdict.DISTINCT: EXIT_DISTINCT,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}


class UsageError(InputError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "unknown"
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load_link(path: str) -> ColoredStringLink:
    return parse_link(_read(path)).to_link()


def _load_graph(path: str) -> ColoredStringLink:
    return parse_graph(_read(path)).to_link()


def _vector(link: ColoredStringLink):
    invariant_requests.inc()
    return cached_vector(link, default_cache())


def _finish(kind: str, left: ColoredStringLink, right: ColoredStringLink, outcome: DecisionOutcome) -> int:
    decisions.labels(kind=kind, verdict=outcome.verdict.value).inc()
    if kind != "cl":
        search_nodes.observe(outcome.stats.nodes_expanded)
    record_decision(kind, left, right, outcome)
    return _VERDICT_EXIT[outcome.verdict]


def cmd_invariants(args: argparse.Namespace) -> int:
    vector = _vector(_load_link(args.file))
    if args.json:
        sys.stdout.write(render.vector_json(vector) + "\n")
    elif args.tsv:
        sys.stdout.write(render.vector_tsv(vector))
    else:
        sys.stdout.write(render.vector_text(vector))
    return 0


def cmd_canon(args: argparse.Namespace) -> int:
    link = _load_link(args.file)
    sys.stdout.write(render.canonical_text(realize(_vector(link))))
    return 0


def cmd_eq(args: argparse.Namespace) -> int:
    left, right = _load_link(args.file1), _load_link(args.file2)
    if left.ambient != right.ambient:
        raise InputError(f"colors differ: {left.ambient} vs {right.ambient}")
    same = _vector(left) == _vector(right)
    outcome = DecisionOutcome(Verdict.EQUIVALENT if same else Verdict.DISTINCT)
    sys.stdout.write(f"{outcome.verdict.value}\n")
    return _finish("cl", left, right, outcome)


def _budget(args: argparse.Namespace) -> int:
    return args.budget if args.budget is not None else get_settings().budget


def _workers(args: argparse.Namespace) -> int:
    return args.workers if args.workers is not None else get_settings().workers


def cmd_closure_eq(args: argparse.Namespace) -> int:
    left, right = _load_link(args.file1), _load_link(args.file2)
    outcome = closure_equivalent(left, right, budget=_budget(args), workers=_workers(args))
    sys.stdout.write(render.outcome_text(outcome, args.certificate))
    return _finish("closure", left, right, outcome)


def cmd_graph_eq(args: argparse.Namespace) -> int:
    left, right = _load_graph(args.file1), _load_graph(args.file2)
    outcome = gclosure_equivalent(left, right, budget=_budget(args), workers=_workers(args))
    sys.stdout.write(render.outcome_text(outcome, args.certificate))
    return _finish("gclosure", left, right, outcome)


def cmd_count(args: argparse.Namespace) -> int:
    decomposition = ComponentDecomposition.parse(args.colors)
    if args.level is not None and args.level < 1:
        raise InputError(f"level must be at least 1, got {args.level}")
    sys.stdout.write(f"{invariant_count(decomposition, args.level)}\n")
    return 0


def cmd_reduce_graph(args: argparse.Namespace) -> int:
    doc = parse_graph(_read(args.file))
    sys.stdout.write(f"colors: {doc.decomposition}\n")
    return 0


def _decision_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None, help="maximum nodes to expand")
    p.add_argument("--workers", type=int, default=None, help="worker processes expanding each search level")
    p.add_argument("--certificate", action="store_true", help="print the witness or distinguishing invariant")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--error-json", action="store_true", default=argparse.SUPPRESS, help="report errors as JSON on stderr")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging on stderr")
    parser = _Parser(
        prog="linkhom",
        description="Milnor invariants and homotopy decisions for colored string links",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("invariants", parents=[common], help="full invariant vector")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("canon", parents=[common], help="canonical clasper word")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("eq", parents=[common], help="string-link CL-homotopy")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("closure-eq", parents=[common], help="CL-homotopy of closures")
    p.add_argument("file1")
    p.add_argument("file2")
    _decision_options(p)
    p.set_defaults(func=cmd_closure_eq)

    p = sub.add_parser("graph-eq", parents=[common], help="component-homotopy of bouquet graphs")
    p.add_argument("file1")
    p.add_argument("file2")
    _decision_options(p)
    p.set_defaults(func=cmd_graph_eq)

    p = sub.add_parser("count", parents=[common], help="number of invariant coordinates")
    p.add_argument("--colors", required=True, help='strand counts, e.g. "1 1 1"')
    p.add_argument("--level", type=int, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("reduce-graph", parents=[common], help="decomposition from Euler counts")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce_graph)
    return parser


def _report(exc: BaseException, kind: str, as_json: bool) -> None:
    if as_json:
        body: Dict[str, object] = {"error": kind, "message": getattr(exc, "message", None) or str(exc)}
        if isinstance(exc, ParseError):
            body["line"] = exc.line
            body["column"] = exc.column
        sys.stderr.write(json.dumps(body) + "\n")
    else:
        sys.stderr.write(f"error: {exc}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    raw: List[str] = list(sys.argv[1:] if argv is None else argv)
    as_json = "--error-json" in raw
    try:
        args = build_parser().parse_args(raw)
        level = "DEBUG" if getattr(args, "verbose", False) else (get_settings().log_level or "WARNING")
        configure_logging(level, stream=sys.stderr)
        handler: Callable[[argparse.Namespace], int] = args.func
        return handler(args)
    except ParseError as exc:
        _report(exc, exc.kind, as_json)
        return EXIT_PARSE
    except LinkHomotopyError as exc:
        _report(exc, exc.kind, as_json)
        return EXIT_INVALID
    except (OSError, UnicodeDecodeError) as exc:
        _report(exc, "io", as_json)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
