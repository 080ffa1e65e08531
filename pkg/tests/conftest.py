"""Shared fixtures: shipped groups and cached projective covers."""

from __future__ import annotations

import functools
import time

import pytest

from modrep.cli.jobs import load_group, resolve
from modrep.meataxe import DEFAULT_SEED
from modrep.structure import ProjectiveCovers

ACCEPTANCE_LINES: list[str] = []
# property name -> (passed, seconds), filled by test_properties.py
PROPERTY_RESULTS: dict[str, tuple[bool, float]] = {}


@functools.lru_cache(maxsize=None)
def job(name: str):
    return load_group(resolve(name))


def group_data(name: str):
    """(job, G, H, U, F) for a shipped group."""
    j = job(name)
    return j, j.group(), j.subgroup(j.pprime_subgroup), j.subgroup(j.sylow_subgroup), j.field


@functools.lru_cache(maxsize=None)
def covers(name: str, seed: int = DEFAULT_SEED) -> ProjectiveCovers:
    """All projective covers of a shipped group, with Loewy data."""
    _, G, H, U, F = group_data(name)
    pc = ProjectiveCovers(G, F, H, U, seed=seed)
    pc.all_covers()
    for sid in pc.catalog.ids:
        pc.with_loewy(sid)
    return pc


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(n: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def run_property(fn) -> tuple[bool, float, BaseException | None]:
    """Run one property once per session and remember the outcome."""
    if fn.__name__ in PROPERTY_RESULTS:
        ok, secs = PROPERTY_RESULTS[fn.__name__]
        return ok, secs, None
    t = time.perf_counter()
    err = None
    try:
        fn()
    except BaseException as exc:  # noqa: BLE001 - reported by the caller
        err = exc
    secs = time.perf_counter() - t
    PROPERTY_RESULTS[fn.__name__] = (err is None, secs)
    return err is None, secs, err
