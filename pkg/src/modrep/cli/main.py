"""Command-line entry point.

    modrep order  s6
    modrep chop   s6 --format text
    modrep pims   path/to/group.json --out pims.json
    modrep loewy  psl2_8
    modrep verify full --jobs 2 --out report.json

A target is a job file, a suite file, or the name of a shipped group or
suite.  Exit codes: 0 pass, 1 expectation mismatch, 2 input error,
3 resource-cap or other internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..meataxe import DEFAULT_SEED
from .jobs import InputError, is_suite_file, load_suite, resolve
from .report import to_json, to_text, write_figures
from .runner import EXIT_INPUT, aggregate, run_jobs

COMMANDS = ("order", "chop", "pims", "loewy", "verify")


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from exc
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modrep", description="Projective covers, Loewy series and "
                                 "hearts of group algebras over small finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "order": "group order and subgroup orders",
        "chop": "composition factors of the permutation and induced modules",
        "pims": "projective covers, Cartan matrix and blocks",
        "loewy": "radical layers and hearts of the projective covers",
        "verify": "full pipeline compared with the job expectations",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("targets", nargs="+", help="job file, suite file, or shipped group/suite name")
        p.add_argument("--seed", type=_seed, default=None, help=f"RNG seed (default {DEFAULT_SEED:#x})")
        p.add_argument("--out", type=Path, default=None,
                       help="write the JSON report here; figures and timings go alongside")
        p.add_argument("--jobs", type=int, default=1, help="parallel job count")
        p.add_argument("--format", choices=("json", "text"), default="text", help="stdout format")
        p.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
        p.add_argument("--cache-dir", default=None, help="cache directory (default ~/.cache/modrep)")
        p.add_argument("--no-figures", action="store_true", help="skip the matplotlib figures")
    return ap


def _expand(targets: list[str]) -> tuple[list[str], int | None]:
    """Job paths from the targets, plus the seed of a single suite file."""
    paths, seed = [], None
    for t in targets:
        try:
            path = resolve(t, "groups")
        except InputError:
            path = resolve(t, "suites")
        if is_suite_file(path):
            suite = load_suite(path)
            paths.extend(suite.jobs)
            if len(targets) == 1:
                seed = suite.seed
        else:
            paths.append(str(path))
    return paths, seed


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        paths, suite_seed = _expand(args.targets)
    except InputError as exc:
        print(f"modrep: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs < 1:
        print("modrep: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    seed = args.seed if args.seed is not None else (suite_seed if suite_seed is not None else DEFAULT_SEED)
    results = run_jobs(paths, seed, args.command, args.jobs, args.cache_dir, not args.no_cache)
    report, timings, code = aggregate(results, seed, suite=None)
    report["command"] = args.command
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(to_json(report))
        args.out.with_name(f"{args.out.stem}.timings.json").write_text(
            json.dumps(timings, sort_keys=True, indent=1) + "\n")
        args.out.with_suffix(".txt").write_text(to_text(report))
        if not args.no_figures and args.command in ("pims", "loewy", "verify"):
            write_figures(report, args.out)
    if args.format == "json":
        sys.stdout.write(to_json(report))
    else:
        sys.stdout.write(to_text(report, timings))
    for r in results:
        if "error" in r.report:
            e = r.report["error"]
            print(f"modrep: {r.name}: stage {e['stage']}: {e['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
