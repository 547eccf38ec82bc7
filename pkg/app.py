"""
Elliptic Hecke Workbench
Command-line front door: runs the verification suites and the parameter
classifier, prints JSON reports on stdout and a summary on stderr.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

# Local imports
from config import get_suites_by_category, load_config
from core.errors import (
    AmbiguousString,
    ConfigError,
    GroupOverflow,
    NonTorsionRequired,
    SingularParameter,
    TooLarge,
    WorkbenchError,
)
from core.report import Report, write_report
from core.verify import HECKE_DATA, run_hecke_suite, run_klr_suite, run_params, run_theta_suite

logger = logging.getLogger("ellhecke")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

USAGE_ERRORS = (ConfigError, NonTorsionRequired, TooLarge, SingularParameter, AmbiguousString, GroupOverflow)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellhecke",
        description="Numerical and exact verification suites for elliptic affine Hecke algebras.",
    )
    parser.add_argument("--config", metavar="PATH", help="JSON config file (tau as [re, im]).")
    parser.add_argument("--seed", type=int, help="Random seed (default: 42).")
    parser.add_argument("--samples", type=int, help="Samples per check (default: 30).")
    parser.add_argument("--json", metavar="PATH", help="Also write the JSON report to PATH.")
    parser.add_argument("--markdown", metavar="PATH", help="Write a markdown report to PATH.")
    parser.add_argument("--html", metavar="PATH", help="Write an HTML report to PATH.")
    parser.add_argument("--list", action="store_true", help="List all suites with their anchors and exit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr.")

    sub = parser.add_subparsers(dest="command")
    theta = sub.add_parser("theta-check", help="theta and f invariants on the configured curve")
    theta.add_argument("--tamper", action="store_true", help="Negate the oddness identity (harness self-test).")

    hecke = sub.add_parser("hecke-verify", help="operator relations, membership and triangularity")
    hecke.add_argument("--datum", default="sl2", help=f"One of {', '.join(HECKE_DATA)} (default: sl2).")

    klr = sub.add_parser("klr-verify", help="KLR relations and phi transport at the torsion point (1/n1, 1/n2)")
    klr.add_argument("n1", type=int)
    klr.add_argument("n2", type=int)
    klr.add_argument("n", type=int)

    params = sub.add_parser("params", help="count irreducible parameters of an eigenvalue file")
    params.add_argument("file", help="JSON {points: [[a, b], ...], t: [a, b]} in lattice coordinates")
    return parser


def print_suite_list() -> None:
    for category, suites in get_suites_by_category().items():
        print(f"{category}:")
        for suite in suites:
            print(f"  {suite['name']:<26} [{suite['command']}] {suite['anchor']}")


def _read_payload(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read parameter file {path}: {exc}") from exc


def run_command(args: argparse.Namespace) -> Report:
    cfg = load_config(args.config, seed=args.seed, samples=args.samples)
    if args.command == "theta-check":
        return run_theta_suite(cfg, tamper=args.tamper)
    if args.command == "hecke-verify":
        return run_hecke_suite(cfg, args.datum)
    if args.command == "klr-verify":
        return run_klr_suite(cfg, args.n1, args.n2, args.n)
    return run_params(cfg, _read_payload(args.file))


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    if args.list:
        print_suite_list()
        return EXIT_PASS
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        report = run_command(args)
    except USAGE_ERRORS as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except WorkbenchError as exc:
        logger.error(f"{args.command} failed: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    except Exception as exc:
        logger.error(f"{args.command} crashed: {exc!r}")
        return EXIT_FAIL

    text = report.to_json()
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    write_report(report, args.markdown, args.html)
    print(report.summary(), file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
