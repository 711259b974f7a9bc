"""Command line entry point: ``frobgb sweep`` and ``frobgb verify``."""

from __future__ import annotations

import argparse
import logging
import sys

from .families import FAMILIES
from .groebner import STRATEGIES
from .harness import FORMATS, ExperimentConfig, load_config, run


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON or key = value file with experiment settings")
    common.add_argument("--p", type=int, help="field characteristic")
    common.add_argument("--vars", help="comma-separated variables, greatest first")
    common.add_argument("--ideal-i", dest="ideal_i", help="generators raised to q (comma-separated)")
    common.add_argument("--ideal-j", dest="ideal_j", help="fixed generators (comma-separated)")
    common.add_argument("--emax", dest="e_max", type=int, help="largest Frobenius exponent e")
    common.add_argument("--swap", action="store_const", const=True, default=None, help="raise J instead of I")
    common.add_argument("--family", help="named family: " + ", ".join(FAMILIES))
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--strategy", choices=sorted(STRATEGIES))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="frobgb", description="Groebner bases of J + I^[q] over F_p")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="tabulate delta, Delta, c for e = 0..emax")
    sub.add_parser("verify", parents=[common], help="check a named family against its closed form")
    return parser


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")

    try:
        cfg = load_config(args.config) if args.config else ExperimentConfig()
        for key in ("p", "vars", "ideal_i", "ideal_j", "e_max", "swap", "family", "format", "strategy"):
            value = getattr(args, key)
            if value is not None:
                setattr(cfg, key, value)
        cfg.normalize()
    except (OSError, ValueError) as exc:
        print(f"frobgb: {exc}", file=sys.stderr)
        return 2
    if args.command == "verify" and not cfg.family:
        print("frobgb: verify needs --family", file=sys.stderr)
        return 2

    result = run(cfg)
    if result.error:
        print(f"frobgb: {result.error}", file=sys.stderr)
    sys.stdout.write(result.output)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
