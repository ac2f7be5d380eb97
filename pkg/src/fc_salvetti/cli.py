"""Command-line front end.

Each subcommand reads an arrangement (``--n`` or ``--arrangement FILE``) or
the output of the previous stage, and writes one document to ``-o`` or
stdout.  Exit status: 0 success, 1 failed verification, 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import arrangement as A
from .groups import BATTERY_BUILDERS, DEFAULT_BATTERY, BUDGET_ENV, GroupTableError, battery
from .presentation import (
    SPANNING_COMPLEX,
    TREE,
    StructuralError,
    computed_presentation,
    fc_model_presentation,
    presentation_from_complex,
    spanning_cells,
)
from .quotient import ActionError, build_quotient, dumps_quotient, loads_quotient
from .salvetti import IncidenceError, build_salvetti_2_skeleton, dumps_complex, loads_complex
from .tietze import DEFAULT_BUDGET
from .verify import compare_presentations, run_invariant_suite
from .words import GroupPresentation, PresentationError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

INPUT_ERRORS = (
    A.CapacityError,
    A.ArrangementError,
    IncidenceError,
    ActionError,
    StructuralError,
    PresentationError,
    GroupTableError,
    OSError,
    UnicodeDecodeError,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    return Path(path).read_text()


def _arrangement(args) -> A.Arrangement:
    if getattr(args, "arrangement", None):
        return A.loads_arrangement(_read(args.arrangement))
    if args.n is None:
        raise UsageError("give --n N or an input file")
    return A.build_fc_arrangement(args.n)


def _complex(args):
    if getattr(args, "complex", None):
        return loads_complex(_read(args.complex))
    return build_salvetti_2_skeleton(_arrangement(args))


def _quotient(args):
    if getattr(args, "quotient", None):
        return loads_quotient(_read(args.quotient))
    return build_quotient(_complex(args))


def _add_arrangement_input(p: argparse.ArgumentParser) -> argparse._MutuallyExclusiveGroup:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="dimension of the F_C arrangement")
    g.add_argument("--arrangement", metavar="FILE", help="arrangement document")
    return g


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fc-salvetti", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def out(p):
        p.add_argument("-o", "--output", metavar="FILE", help="write here instead of stdout")
        return p

    p = out(sub.add_parser("build", help="emit the F_C arrangement"))
    p.add_argument("--n", type=int, required=True)

    p = out(sub.add_parser("chambers", help="list chambers as sign vectors"))
    _add_arrangement_input(p)

    p = out(sub.add_parser("complex", help="emit the Salvetti 2-skeleton"))
    _add_arrangement_input(p)

    p = out(sub.add_parser("quotient", help="emit the quotient by coordinate sign flips"))
    g = _add_arrangement_input(p)
    g.add_argument("--complex", metavar="FILE", help="complex document")

    p = out(sub.add_parser("presentation", help="emit a presentation of the quotient's fundamental group"))
    g = _add_arrangement_input(p)
    g.add_argument("--complex", metavar="FILE")
    g.add_argument("--quotient", metavar="FILE")
    p.add_argument("--mode", choices=[TREE, SPANNING_COMPLEX], default=SPANNING_COMPLEX)
    p.add_argument("--simplify", action="store_true", help="apply Tietze moves")
    p.add_argument("--tietze-budget", type=_positive, default=DEFAULT_BUDGET)

    p = out(sub.add_parser("model", help="emit the model presentation"))
    p.add_argument("--n", type=int, required=True)

    p = out(sub.add_parser("verify", help="run the invariant suite or compare two presentations"))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--compare", nargs=2, metavar="FILE", help="two presentation files")
    p.add_argument("--battery", nargs="+", default=list(DEFAULT_BATTERY), choices=sorted(BATTERY_BUILDERS))
    p.add_argument("--budget", type=_positive, help=f"hom-count budget (default: ${BUDGET_ENV} or 10^9)")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--timing", action="store_true", help="include timings (output is then not reproducible)")
    return parser


def run(args) -> tuple[str, int]:
    cmd = args.command
    if cmd == "build":
        return A.dumps_arrangement(A.build_fc_arrangement(args.n)), EXIT_OK
    if cmd == "chambers":
        return A.dumps_chambers(_arrangement(args)), EXIT_OK
    if cmd == "complex":
        return dumps_complex(_complex(args)), EXIT_OK
    if cmd == "quotient":
        return dumps_quotient(_quotient(args)), EXIT_OK
    if cmd == "presentation":
        q = _quotient(args)
        s = spanning_cells(q)
        if args.simplify:
            pres = computed_presentation(q, s, args.mode, args.tietze_budget).simplified
        else:
            pres = presentation_from_complex(q, s, args.mode)
        return pres.to_text(), EXIT_OK
    if cmd == "model":
        A.build_fc_arrangement(args.n)  # same capacity rule as everywhere else
        return fc_model_presentation(args.n).to_text(), EXIT_OK
    if cmd == "verify":
        groups = battery(args.battery)
        if args.compare:
            p1, p2 = (GroupPresentation.from_text(_read(f)) for f in args.compare)
            report = compare_presentations(p1, p2, groups, args.budget, label="files")
        else:
            A.build_fc_arrangement(args.n)
            report = run_invariant_suite(args.n, groups, args.budget)
        text = report.to_json(args.timing) if args.format == "json" else report.summary(args.timing)
        return text, EXIT_OK if report.passed else EXIT_FAILED
    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, code = run(args)
    except UsageError as exc:
        print(f"fc-salvetti: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"fc-salvetti: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"fc-salvetti: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
