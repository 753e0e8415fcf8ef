"""Command-line entry point: ``mpade run|presets|approximate|verify``.

Exit codes are 0 on success, 2 on a configuration error and 3 when a pipeline
step (or an acceptance criterion under ``verify``) fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from mpade.errors import ConfigError, MpadeError
from mpade.scenario import DEFAULT_MAX_N, approximant_record, dumps, list_presets, load_scenario, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PIPELINE = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpade", description="Multi-point Pade approximants and continuation-radius estimates.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and write its report files")
    run.add_argument("config", help="path to a scenario JSON file, or a preset name")
    run.add_argument("--out", type=Path, default=None, help="output directory (default ./out/<scenario-name>)")
    run.add_argument("--seed", type=int, default=None, help="seed for randomized root-finder starts")
    run.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help=f"cap on n (default {DEFAULT_MAX_N})")

    sub.add_parser("presets", help="list bundled scenarios")

    ap = sub.add_parser("approximate", help="print the coefficients of a single approximant")
    ap.add_argument("config")
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    ver = sub.add_parser("verify", help="run the acceptance suite and print a pass/fail table")
    ver.add_argument("--only", nargs="*", default=None, help="criterion ids to run, e.g. AC-1 AC-5")
    return p


def _cmd_run(args) -> int:
    res = run_scenario(args.config, out_dir=args.out, seed=args.seed, max_n=args.max_n)
    out = args.out if args.out is not None else Path("out") / res.scenario.name
    r_hat = res.rates["r_hat"]
    shown = "n/a" if r_hat is None else ("infinite" if r_hat == float("inf") else f"{r_hat:.6g}")
    print(f"{res.scenario.name}: r_hat = {shown}; reports in {out}")
    return EXIT_OK


def _cmd_presets(args) -> int:
    rows = list_presets()
    width = max(len(n) for n, _ in rows)
    for name, desc in rows:
        print(f"{name.ljust(width)}  {desc}")
    return EXIT_OK


def _cmd_approximate(args) -> int:
    sc = load_scenario(args.config, max_n=args.max_n)
    if args.n > args.max_n:
        raise ConfigError(f"n = {args.n} exceeds --max-n {args.max_n}", field="n")
    sys.stdout.write(dumps(approximant_record(sc, args.n, seed=args.seed)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    from mpade.acceptance import run_all

    results = run_all(args.only)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_PIPELINE


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {
        "run": _cmd_run,
        "presets": _cmd_presets,
        "approximate": _cmd_approximate,
        "verify": _cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MpadeError as exc:
        print(f"pipeline error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
