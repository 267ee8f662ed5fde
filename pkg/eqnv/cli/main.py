# eqnv/cli/main.py
"""Command-line entry point.

    eqnv check PROBLEM.json [--format json|text] [--degrees M] [--expect yes|no]
    eqnv polytope PROBLEM.json [--which moment|section] [--plot-data]
    eqnv certificate PROBLEM.json

Exit status: 0 on success, 1 when --expect does not match, 2 for invalid
input, 3 when an internal consistency check fails.
"""
import argparse
import logging
import sys
from typing import List, Optional

from eqnv import __version__
from eqnv.cli.problem import ProblemFile
from eqnv.cli.report import (
    VerdictReport, certificate_dict, certificate_text, polytope_dict, polytope_text, render_json, tool_metadata,
)
from eqnv.core.config import EngineConfig
from eqnv.core.errors import (
    ConfigurationError, InternalInconsistencyError, LinearProgramError, ProblemFileError, ValidationError,
)
from eqnv.verdict.checker import NonVanishingChecker
from eqnv.verdict.models import Verdict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EXPECT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


def _verdict(checker: NonVanishingChecker, problem: ProblemFile) -> Verdict:
    if problem.mode == "toric":
        return checker.run_pipeline(problem.toric.pair(), problem.twist)
    return checker.run_records(problem.fixedpoints.records, problem.twist)


def cmd_check(args: argparse.Namespace, checker: NonVanishingChecker) -> int:
    problem = ProblemFile.load(args.input)
    if args.degrees is not None and problem.mode != "toric":
        raise ProblemFileError("--degrees needs a toric problem.")
    verdict = _verdict(checker, problem)
    section = None
    kappa = None
    if problem.mode == "toric":
        pair = problem.toric.pair()
        section = checker.section_polytope(pair)
        if args.degrees is not None:
            kappa = checker.kappa_estimates(pair, problem.twist, args.degrees)
    report = VerdictReport(verdict, section_polytope=section, kappa=kappa, toric=problem.mode == "toric")
    _write(args, report.to_json() if args.format == "json" else report.to_text())
    if args.expect is not None and args.expect != verdict.answer:
        logger.warning("expected %s, got %s", args.expect, verdict.answer)
        return EXIT_EXPECT_MISMATCH
    return EXIT_OK


def cmd_polytope(args: argparse.Namespace, checker: NonVanishingChecker) -> int:
    problem = ProblemFile.load(args.input)
    if args.which == "section":
        if problem.mode != "toric":
            raise ProblemFileError("The section polytope needs a toric problem.")
        polytope = checker.section_polytope(problem.toric.pair())
    elif problem.mode == "toric":
        polytope = checker.moment_polytope(problem.toric.pair(), problem.twist)
    else:
        polytope = checker.record_polytope(problem.fixedpoints.records, problem.twist)
    if args.format == "json":
        text = render_json({
            "which": args.which,
            "polytope": polytope_dict(polytope, plot_data=args.plot_data),
            "tool": tool_metadata(),
        })
    else:
        text = polytope_text(args.which, polytope, plot_data=args.plot_data)
    _write(args, text)
    return EXIT_OK


def cmd_certificate(args: argparse.Namespace, checker: NonVanishingChecker) -> int:
    problem = ProblemFile.load(args.input)
    verdict = _verdict(checker, problem)
    _write(args, render_json(certificate_dict(verdict)) if args.format == "json" else certificate_text(verdict))
    return EXIT_OK


def _write(args: argparse.Namespace, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="problem file (JSON, schema 1)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", help="write the report to this path instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="eqnv", description="Exact equivariant non-vanishing checks for toric pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    check = sub.add_parser("check", parents=[common], help="decide non-vanishing and print a report")
    check.add_argument("--degrees", type=int, metavar="M", help="also count invariant sections up to degree M")
    check.add_argument("--expect", choices=("yes", "no"), help="exit 1 unless the answer matches")
    check.set_defaults(handler=cmd_check)

    polytope = sub.add_parser("polytope", parents=[common], help="print the moment or section polytope")
    polytope.add_argument("--which", choices=("moment", "section"), default="moment")
    polytope.add_argument("--plot-data", action="store_true", help="add a 2-D projection for plotting")
    polytope.set_defaults(handler=cmd_polytope)

    certificate = sub.add_parser("certificate", parents=[common], help="print the certificate and its verification")
    certificate.set_defaults(handler=cmd_certificate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = EngineConfig.from_env()
    except ConfigurationError as e:
        print(f"eqnv: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "check" and args.degrees is not None and args.degrees < 1:
        print("eqnv: error: --degrees must be at least 1", file=sys.stderr)
        return EXIT_INVALID
    checker = NonVanishingChecker(config)
    try:
        return args.handler(args, checker)
    except InternalInconsistencyError as e:
        print(f"eqnv: internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except LinearProgramError as e:
        print(f"eqnv: solver failure: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValidationError as e:
        print(f"eqnv: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"eqnv: error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
