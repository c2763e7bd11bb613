"""``octowrap`` command line: run seeded suites and print reports."""
from __future__ import annotations

import argparse
import os
import sys

from .report import emit_report
from .scenario import ScenarioError
from .suites import ALL_SUITES, DEFAULT_SEED, SUITES, SuiteSpec, UnknownSuiteError, run_suite


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="octowrap", description="Run seeded verification suites.")
    p.add_argument("--suite", action="append", default=[], metavar="NAME",
                   help="suite to run (repeatable)")
    p.add_argument("--all", action="store_true", help="run every suite except 'scenario'")
    p.add_argument("--seed", type=int, default=None, help="seed (falls back to $OCTOWRAP_SEED, then 7)")
    p.add_argument("--samples", type=int, default=None, help="override per-suite sample counts")
    p.add_argument("--depth", type=int, default=3, help="search depth for skew equality")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--scenario", metavar="PATH", help="scenario file; implies --suite scenario")
    p.add_argument("--model", default=None, help="group model for suites that take one")
    p.add_argument("--fixture", metavar="PATH", help="replacement octonion sign-table fixture")
    p.add_argument("--output", metavar="PATH", help="write the report here as well as to stdout")
    p.add_argument("--list", action="store_true", help="list suite names and exit")
    return p


def _seed(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("OCTOWRAP_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"octowrap: OCTOWRAP_SEED is not an integer: {env!r}")
    return DEFAULT_SEED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for name, (_, module) in SUITES.items():
            print(f"{name}\t{module}")
        return 0
    names = list(args.suite)
    if args.all:
        names += [n for n in ALL_SUITES if n not in names]
    if args.scenario and "scenario" not in names:
        names.append("scenario")
    if not names:
        print("octowrap: nothing to run (use --suite, --all, --scenario or --list)", file=sys.stderr)
        return 2
    seed = _seed(args.seed)
    reports = []
    for name in names:
        try:
            spec = SuiteSpec(name, samples=args.samples, seed=seed, depth=args.depth, model=args.model,
                             scenario=args.scenario, fixture=args.fixture)
            reports.append(run_suite(spec))
        except UnknownSuiteError as exc:
            print(f"octowrap: {exc}", file=sys.stderr)
            return 2
        except ScenarioError as exc:
            print(f"octowrap: {args.scenario}: {exc}", file=sys.stderr)
            return 2
        except (OSError, ValueError) as exc:
            print(f"octowrap: {name}: {exc}", file=sys.stderr)
            return 2
    try:
        out = emit_report(reports, args.format, args.output)
    except OSError as exc:
        print(f"octowrap: cannot write report: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 0 if all(r.passed for r in reports) else 1
