"""Command line interface: ``constant``, ``profile`` and ``verify``."""

from __future__ import annotations

import argparse
import io
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import lambdak, verify
from .closedform import HypothesisFailed
from .report import build_report, dumps
from .search import SearchConfig
from .weights import DivergenceError, UnsupportedPair, l1_norm, parse_weight

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_HYPOTHESIS = 2
EXIT_TRUNCATED = 3


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_constant(args: argparse.Namespace) -> int:
    pair = parse_weight(args.weight, args.psi)
    mass = args.m if args.eq == "dirac" else None
    config = SearchConfig(k_max=args.k_max)
    report = build_report(args.eq, args.d, pair, mass, config)
    _write(report.to_json() + "\n", args.out)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.strict and report.case["truncated"]:
        return EXIT_TRUNCATED
    return EXIT_OK


def profile_rows(args: argparse.Namespace) -> tuple[np.ndarray, np.ndarray]:
    pair = parse_weight(args.weight, args.psi)
    pair.check_dimension(args.d)
    grid = np.logspace(math.log10(args.r_min), math.log10(args.r_max), args.points)
    if args.eq == "dirac":
        lower = lambdak.lambda_profile(pair, args.k, args.d, grid, args.route).values
        upper = lambdak.lambda_profile(pair, args.k + 1, args.d, grid, args.route).values
        ratio = args.m / np.hypot(grid, args.m)
        values = lower + upper + ratio * np.abs(lower - upper)
    else:
        values = lambdak.lambda_profile(pair, args.k, args.d, grid, args.route).values
    if args.normalize == "l1":
        values = values / ((2 * math.pi) ** (args.d - 1) * l1_norm(pair))
    elif args.normalize == "unit":
        values = 2 * values / (2 * math.pi) ** args.d
    return grid, values


def cmd_profile(args: argparse.Namespace) -> int:
    grid, values = profile_rows(args)
    buf = io.StringIO()
    buf.write("r,value\n")
    for r, v in zip(grid, values):
        buf.write(f"{r:.17g},{v:.17g}\n")
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        checks = verify.run(args.only or None)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_FAILED
    for check in checks:
        print(check.line(), file=sys.stderr if args.json else sys.stdout)
    if args.json:
        payload = {
            "passed": all(c.passed for c in checks),
            "checks": [
                {"name": c.name, "passed": c.passed, "worst": c.worst, "tolerance": c.tolerance,
                 "detail": c.detail}
                for c in checks
            ],
        }
        _write(dumps(payload) + "\n", args.json if args.json != "-" else None)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothconst",
        description="Optimal smoothing constants for the free Schrodinger and Dirac equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def weight_args(p):
        p.add_argument("--weight", required=True,
                       help="typeA:s=2, typeB:s=1.5, typeC:s=2, gaussian, exp, besselK0, fejer or custom:FILE.csv")
        p.add_argument("--psi", choices=("pair-default", "sqrt-r"), default="pair-default")
        p.add_argument("--d", type=int, required=True, help="space dimension (>= 2)")
        p.add_argument("--eq", choices=("schrodinger", "dirac"), default="schrodinger")
        p.add_argument("--m", type=float, default=0.0, help="mass for --eq dirac")
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("constant", help="compute one optimal constant as a JSON report")
    weight_args(p)
    p.add_argument("--k-max", type=int, default=64)
    p.add_argument("--strict", action="store_true", help="exit 3 when the k sweep is truncated")
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("profile", help="write the profile r -> lambda_k(r) as CSV")
    weight_args(p)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--r-min", type=float, default=1e-2)
    p.add_argument("--r-max", type=float, default=1e2)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--route", choices=lambdak.ROUTES, default="auto")
    p.add_argument("--normalize", choices=("none", "l1", "unit"), default="none",
                   help="l1: divide by (2 pi)^(d-1) ||w||_1; unit: multiply by 2 (2 pi)^(-d)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", action="append", metavar="CHECK",
                   help=f"run only this check (repeatable): {', '.join(verify.CHECKS)}")
    p.add_argument("--json", nargs="?", const="-", metavar="FILE",
                   help="write machine-readable results (stdout when FILE is omitted)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisFailed, UnsupportedPair, DivergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ValueError, lambdak.RouteUnavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
