"""Command-line entry point: ``supermaze --scenario FILE [--out DIR] ...``.

Exit codes: 0 success, 2 parse/validation failure, 3 model error at run
time, 4 speed-limit violations present under ``--strict-qsl``.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from .config import conventions
from .errors import ParseError, SupermazeError, ValidationError
from .scenario import default_out_dir, load_scenario, run, write_outputs

log = logging.getLogger("supermaze")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MODEL = 3
EXIT_QSL = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supermaze", description=__doc__.splitlines()[0])
    p.add_argument("--scenario", required=True, help="scenario JSON file (schema version 1)")
    p.add_argument("--out", default=None, help="output directory (default: $SUPERMAZE_OUT or ./out)")
    p.add_argument("--hbar", type=float, default=None, help="override the scenario's hbar")
    p.add_argument("--tolerance", type=float, default=None, help="override norm/unitarity/Hermiticity tolerances")
    p.add_argument("--strict-qsl", action="store_true", help="exit 4 if any speed-limit violation is found")
    p.add_argument("--seed", type=int, default=None, help="override the scenario's seed")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.hbar is not None and not args.hbar > 0:
        print("error: --hbar must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.tolerance is not None and not args.tolerance > 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return EXIT_INPUT
    with conventions(tolerance=args.tolerance):
        try:
            sc = load_scenario(args.scenario)
        except OSError as exc:
            print(f"error: cannot read scenario: {exc}", file=sys.stderr)
            return EXIT_INPUT
        except (ParseError, ValidationError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        overrides = {}
        if args.hbar is not None:
            overrides["hbar"] = args.hbar
        if args.seed is not None:
            overrides["seed"] = args.seed
        sc = dataclasses.replace(sc, **overrides)
        try:
            results = run(sc)
        except ValidationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        except SupermazeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MODEL
    out = args.out or default_out_dir()
    files = write_outputs(results, out, scenario=sc)
    log.info("wrote %d files to %s", len(files), out)
    violations = sum(r.qsl_violations for r in results)
    if violations:
        print(f"warning: {violations} quantum-speed-limit violation(s)", file=sys.stderr)
        if args.strict_qsl:
            return EXIT_QSL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
