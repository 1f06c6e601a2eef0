"""The ``rrlab`` command line.

Exit codes: 0 when every check passes, 1 when a check fails or errors,
2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from ..exact.scalars import field_from_spec
from .corpus import corpus_names, corpus_run
from .dsl import ScriptError, format_script, parse
from .session import RunConfig, run

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _field(spec: str) -> str:
    try:
        f = field_from_spec(spec)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return "q" if not f.characteristic else f"fp:{f.characteristic}"


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None,
                        help="q or fp:<prime>; overrides the field declared in scripts")
    common.add_argument("--seed", type=_seed, default=0, help="seed for random linear forms (default 0)")
    common.add_argument("--max-degree", type=_positive, default=12, dest="max_degree",
                        help="degree bound of the linear-algebra oracle (default 12)")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    common.add_argument("--output", "-o", help="also write the JSON report to this file")
    common.add_argument("--attempts", type=_positive, default=16, help="random forms tried per witness search")
    common.add_argument("--evidence-bound", type=_positive, default=None, dest="evidence_bound",
                        help="Ext range for G-dimension evidence (default 2*nvars+2)")
    common.add_argument("--timings", action="store_true", help="include wall times in the JSON")
    common.add_argument("--gb-check", action="store_true", dest="gb_check",
                        help="re-verify every Groebner basis by its S-pairs")

    p = argparse.ArgumentParser(prog="rrlab", description="Ratliff-Rush filtrations and m-adic powers: "
                                "scripted computations with certified checks.")
    sub = p.add_subparsers(dest="action", required=True)
    r = sub.add_parser("run", parents=[common], help="run a script file ('-' for stdin)")
    r.add_argument("script")
    c = sub.add_parser("corpus", parents=[common], help="run the bundled corpus")
    c.add_argument("names", nargs="*", help="corpus entries (default: all)")
    c.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: one per CPU)")
    c.add_argument("--list", action="store_true", help="list the corpus entries and exit")
    f = sub.add_parser("format", help="parse a script and print it in canonical form")
    f.add_argument("script")
    return p


def _config(args) -> RunConfig:
    return RunConfig(field=args.field, seed=args.seed, max_degree=args.max_degree, attempts=args.attempts,
                     evidence_bound=args.evidence_bound, timings=args.timings, gb_check=args.gb_check)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(report, args) -> int:
    text = report.dumps()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.json else report.table())
    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("RRLAB_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.action == "corpus":
            if args.list:
                print("\n".join(corpus_names()))
                return EXIT_PASS
            known = set(corpus_names())
            bad = [n for n in args.names if n not in known]
            if bad:
                print(f"rrlab: unknown corpus entries: {', '.join(bad)}", file=sys.stderr)
                return EXIT_USAGE
            return _emit(corpus_run(_config(args), args.names or None, args.jobs), args)
        text = _read(args.script)
        script = parse(text)
        if args.action == "format":
            sys.stdout.write(format_script(script))
            return EXIT_PASS
        return _emit(run(script, _config(args)), args)
    except ScriptError as exc:
        print(f"{args.script}:{exc.line}:{exc.col}: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rrlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
