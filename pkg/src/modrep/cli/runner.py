"""Job and suite orchestration: caching, worker pool, exit status."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..fflinalg import FieldError
from ..meataxe import DEFAULT_SEED
from ..permgroup import GroupError
from ..repmodule import ModuleError
from .analysis import SCHEMA_VERSION, StageError, Timer, analyze, chop_stage, order_section
from .cache import Cache, cache_key
from .expect import compare
from .jobs import InputError, load_group, load_suite

EXIT_PASS, EXIT_MISMATCH, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

_INPUT_ERRORS = (InputError, GroupError, FieldError, ModuleError)


@dataclass
class JobResult:
    """Outcome of one job; ``report`` is deterministic, ``timings`` is not."""

    name: str
    path: str
    status: str  # "pass", "mismatch", "input_error", "resource_error", "done"
    report: dict
    timings: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return {
            "pass": EXIT_PASS,
            "done": EXIT_PASS,
            "mismatch": EXIT_MISMATCH,
            "input_error": EXIT_INPUT,
            "resource_error": EXIT_RESOURCE,
        }[self.status]


def _error_status(exc: BaseException) -> str:
    """Bad input maps to exit code 2; every other failure (resource caps,
    covers not found) to 3."""
    cause = exc.cause if isinstance(exc, StageError) else exc
    if isinstance(cause, _INPUT_ERRORS):
        return "input_error"
    return "resource_error"


def _cached_covers(job, seed, cache: Cache, timer: Timer):
    key = cache_key("covers", job.key_data(), seed)
    hit = cache.get(key)
    if hit is not None:
        return hit["covers"], hit["chop"], key
    covers, chopped = chop_stage(job, seed, timer)
    return covers, chopped, key


def run_job(path: str, seed: int = DEFAULT_SEED, command: str = "verify",
            cache_dir: str | None = None, use_cache: bool = True) -> JobResult:
    """Run one job file up to ``command`` (order, chop, pims, loewy, verify)."""
    timer = Timer()
    report: dict = {"job": path, "seed": seed}
    name = path
    try:
        with timer.stage("load"):
            job = load_group(path)
        name = job.name
        report = {"name": job.name, "job": path, "seed": seed}
        if command == "order":
            with timer.stage("order"):
                report["order"] = order_section(job)
            return JobResult(name, path, "done", report, timer.seconds)
        cache = Cache(cache_dir, enabled=use_cache)
        if command == "chop":
            covers, chopped = chop_stage(job, seed, timer)
            from .analysis import catalog_export

            report["chop"] = chopped
            report["catalog"] = {"splitting": covers.catalog.splitting,
                                 "simples": catalog_export(covers.catalog, job)}
            return JobResult(name, path, "done", report, timer.seconds)
        depth = command
        rkey = cache_key(f"results-{depth}", job.key_data() | {"labels": job.labels}, seed)
        res = cache.get(rkey)
        if res is None:
            covers, chopped, ckey = _cached_covers(job, seed, cache, timer)
            res, covers = analyze(job, seed, timer, depth, covers, chopped)
            cache.put(ckey, {"covers": covers, "chop": chopped})
            cache.put(rkey, res)
        report.update(res)
    except StageError as exc:
        report["error"] = {"stage": exc.stage, "message": str(exc.cause) or type(exc.cause).__name__,
                           "type": type(exc.cause).__name__}
        return JobResult(name, path, _error_status(exc), report, timer.seconds)
    except Exception as exc:  # noqa: BLE001 - any other failure is reported, not raised
        report["error"] = {"stage": "internal", "message": str(exc) or type(exc).__name__,
                           "type": type(exc).__name__}
        return JobResult(name, path, _error_status(exc), report, timer.seconds)
    if command != "verify":
        return JobResult(name, path, "done", report, timer.seconds)
    rows = compare(job, report)
    report["expectations"] = rows
    status = "pass" if all(r["pass"] for r in rows) else "mismatch"
    report["status"] = status
    return JobResult(name, path, status, report, timer.seconds)


def _run_one(args):
    return run_job(*args)


def run_jobs(paths: list[str], seed: int, command: str, jobs: int = 1,
             cache_dir: str | None = None, use_cache: bool = True) -> list[JobResult]:
    """Run independent jobs, in a pool of ``jobs`` worker processes when > 1.
    Results come back in input order."""
    args = [(p, seed, command, cache_dir, use_cache) for p in paths]
    if jobs <= 1 or len(paths) <= 1:
        return [_run_one(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, args))


def run_suite(suite_path: str, seed: int | None = None, jobs: int = 1, command: str = "verify",
              cache_dir: str | None = None, use_cache: bool = True) -> tuple[dict, dict, int]:
    """Run every job of a suite; returns (report, timings, exit code).

    The seed given on the command line wins over the suite's own seed.
    """
    suite = load_suite(suite_path)
    if seed is None:
        seed = suite.seed if suite.seed is not None else DEFAULT_SEED
    results = run_jobs(suite.jobs, seed, command, jobs, cache_dir, use_cache)
    return aggregate(results, seed, suite=suite_path)


def aggregate(results: list[JobResult], seed: int, suite: str | None = None) -> tuple[dict, dict, int]:
    code = exit_status(results)
    report = {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "seed": seed,
        "exit_code": code,
        "summary": [{"name": r.name, "status": r.status} for r in results],
        "jobs": [r.report for r in results],
    }
    timings = {r.name: r.timings for r in results}
    return report, timings, code


def exit_status(results: list[JobResult]) -> int:
    codes = {r.exit_code for r in results}
    for c in (EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH):
        if c in codes:
            return c
    return EXIT_PASS
