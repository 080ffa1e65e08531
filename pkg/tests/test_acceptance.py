"""Acceptance criteria 1-11.

Each test runs the uncached pipeline (the same code path as ``modrep
verify``), checks the criterion and its time limit, and records one
PASS/FAIL line; the lines are repeated at the end of the pytest run.
Runnable on its own: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import PROPERTY_RESULTS, covers, group_data, run_property  # noqa: E402
from properties import EXAMPLES, PROPERTIES  # noqa: E402

from modrep.cli.jobs import resolve  # noqa: E402
from modrep.cli.runner import run_job  # noqa: E402
from modrep.meataxe import DEFAULT_SEED, SimpleCatalog, chop  # noqa: E402
from modrep.repmodule import dual, induce, restrict, trivial  # noqa: E402
from modrep.structure import ProjectiveCovers, check_llprop, kmu_check  # noqa: E402


def verify(name: str) -> dict:
    res = run_job(str(resolve(name, "groups")), DEFAULT_SEED, "verify", use_cache=False)
    if "error" in res.report:
        e = res.report["error"]
        raise RuntimeError(f"{name}: stage {e['stage']}: {e['message']}")
    return res.report


def pims(report: dict) -> dict:
    return {r["label"]: r for r in report["pims"]}


def b0_pims(report: dict) -> list:
    return [pims(report)[s] for s in report["principal_block"]["simples"]]


def indecomposable(row: dict) -> bool:
    """A simple heart is indecomposable too."""
    return row["heart"]["verdict"] in ("simple", "indecomposable")


class Criterion:
    """Collects named checks and the wall time of one criterion."""

    def __init__(self, number: int, limit: float, record):
        self.number, self.limit, self.record = number, limit, record
        self.checks: list[tuple[str, bool]] = []
        self.start = time.perf_counter()

    def check(self, what: str, ok) -> None:
        self.checks.append((what, bool(ok)))

    def finish(self, error: BaseException | None = None) -> None:
        secs = time.perf_counter() - self.start
        self.check(f"{secs:.1f}s < {self.limit:g}s", secs < self.limit)
        failed = [w for w, ok in self.checks if not ok]
        if error is not None:
            failed.insert(0, f"{type(error).__name__}: {error}")
        detail = "; ".join(failed) if failed else "; ".join(w for w, _ in self.checks)
        self.record(self.number, not failed, detail)
        assert not failed, detail


@pytest.fixture
def criterion(record_criterion):
    return lambda number, limit: Criterion(number, limit, record_criterion)


def run_criterion(criterion, number, limit, body):
    c = criterion(number, limit)
    try:
        body(c)
    except Exception as exc:  # noqa: BLE001 - recorded as a FAIL line
        c.finish(exc)
        return
    c.finish()


def test_criterion_1_sl2_5(criterion):
    def body(c):
        rep = verify("sl2_5")
        dims = sorted(sorted(b["dims"]) for b in rep["blocks"])
        c.check(f"blocks {dims}", dims == [[1, 3], [2, 4], [5]])
        k = pims(rep)["k"]
        c.check(f"LL(P(k)) = {k['loewy_length']}", k["loewy_length"] == 3)
        c.check(f"heart(P(k)) {k['heart']['verdict']}", k["heart"]["verdict"] == "simple")
        dec = [r["label"] for r in rep["pims"] if r["heart"]["verdict"] == "decomposable"]
        c.check(f"decomposable hearts {dec}", len(dec) == 2)
    run_criterion(criterion, 1, 10, body)


def test_criterion_2_psl2_8(criterion):
    def body(c):
        rep = verify("psl2_8")
        P = pims(rep)
        c.check(f"LL {P['k']['loewy_length']}/{P['7']['loewy_length']}",
                (P["k"]["loewy_length"], P["7"]["loewy_length"]) == (3, 5))
        c.check(f"H(k) {P['k']['heart']['verdict']}", indecomposable(P["k"]))
        c.check(f"H(7) {P['7']['heart']['verdict']}", P["7"]["heart"]["verdict"] == "decomposable")
    run_criterion(criterion, 2, 30, body)


def test_criterion_3_psl2_8_3(criterion):
    def body(c):
        rep = verify("psl2_8_3")
        b0 = b0_pims(rep)
        lls = sorted(r["loewy_length"] for r in b0)
        c.check(f"B0 LL {lls}", lls == [5, 7])
        verdicts = [r["heart"]["verdict"] for r in b0]
        c.check(f"hearts {verdicts}", all(indecomposable(r) for r in b0))
    run_criterion(criterion, 3, 120, body)


def test_criterion_4_s6(criterion):
    def body(c):
        rep = verify("s6")
        b0 = b0_pims(rep)
        c.check(f"B0 LL {[r['loewy_length'] for r in b0]}", [r["loewy_length"] for r in b0] == [10] * 3)
        c.check("B0 hearts indecomposable", all(indecomposable(r) for r in b0))
        d0 = [b for b in rep["blocks"] if b["defect_zero"]]
        c.check(f"defect-0 blocks {[b['dims'] for b in d0]}", [b["dims"] for b in d0] == [[16]])
        if d0:
            c.check("c(16) = 1", pims(rep)[d0[0]["simples"][0]]["c_invariant"] == 1)
    run_criterion(criterion, 4, 120, body)


def test_criterion_5_su3_3(criterion):
    def body(c):
        rep = verify("su3_3")
        lls = [r["loewy_length"] for r in b0_pims(rep)]
        c.check(f"B0 LL {lls}", lls == [19] * 3)
    run_criterion(criterion, 5, 600, body)


def test_criterion_6_g2_2(criterion):
    def body(c):
        rep = verify("g2_2")
        lls = [r["loewy_length"] for r in b0_pims(rep)]
        c.check(f"B0 LL {lls}", lls == [20] * 3)
        c.check(f"induced dim {rep['group']['index']}", rep["group"]["index"] == 448)
    run_criterion(criterion, 6, 1800, body)


def test_criterion_7_c3c3_q8(criterion):
    def body(c):
        rep = verify("c3c3_q8")
        k = pims(rep)["k"]
        c11 = rep["cartan"]["matrix"][0][0]
        c.check(f"c11 = {c11}", c11 == 2 and rep["cartan"]["simples"][0] == "k")
        lls = [r["loewy_length"] for r in b0_pims(rep)]
        c.check(f"B0 LL {lls}", lls and all(x == 5 for x in lls) and k["loewy_length"] == 5)
    run_criterion(criterion, 7, 30, body)


def test_criterion_8_s3_and_llprop(criterion):
    def body(c):
        rep = verify("s3")
        pb = rep["principal_block"]
        c.check(f"Cartan {pb['cartan']}", pb["cartan"] == [[2, 1], [1, 2]])
        c.check(f"det {pb['cartan_det']}", pb["cartan_det"] == 3)
        c.check(f"S3 case {rep['llprop']['case']}", rep["llprop"]["case"] == "ii-a")
        rc = verify("c3")
        c.check(f"C3 case {rc['llprop']['case']}", rc["llprop"]["case"] == "i")
    run_criterion(criterion, 8, 5, body)


ODD_P = ["c3", "s3", "sl2_5", "psl2_8", "psl2_8_3", "c3c3_q8"]


def test_criterion_9_webb(criterion):
    def body(c):
        for name in ("a5", "sl3_2"):
            v = pims(verify(name))["k"]["heart"]["verdict"]
            c.check(f"{name} H(k) {v}", v == "decomposable")
        for name in ODD_P:
            k = pims(verify(name))["k"]
            c.check(f"{name} H(k) {k['heart']['verdict']}", indecomposable(k))
    run_criterion(criterion, 9, 60, body)


def brute_fixed_dim(M, U) -> int:
    """log_q of the number of U-fixed vectors, by enumeration."""
    F = M.field
    mats = [M.element(u).astype(np.int64) for u in U.generators]
    vecs = np.array(list(itertools.product(range(F.q), repeat=M.dim)), dtype=np.int64)
    keep = np.ones(len(vecs), dtype=bool)
    for a in mats:
        keep &= ((vecs @ a) % F.p == vecs).all(axis=1)
    count = int(keep.sum())
    d = round(np.log(count) / np.log(F.q))
    assert F.q**d == count
    return d


def test_criterion_10_kmu(criterion):
    def body(c):
        for name in ("su3_3", "g2_2"):
            job, G, H, U, F = group_data(name)
            assert F.deg == 1
            cat = SimpleCatalog(G, F)
            chop(induce(trivial(H, F), G), cat)
            names = {v: k for k, v in job.labels.items()}
            for label in ("6", "14"):
                sid = names[label]
                rep = kmu_check(sid, cat, U, F.p)
                c.check(f"{name} {label} kmu", rep.passes and rep.hypothesis_holds)
                # independent count of fixed points, on the module and its dual
                S = cat[sid].module
                fx = brute_fixed_dim(restrict(S, U), U)
                cfx = brute_fixed_dim(restrict(dual(S), U), U)
                c.check(f"{name} {label} fixed/cofixed {fx}/{cfx}", (fx, cfx) == (1, 1) ==
                        (rep.fixed_dim, rep.cofixed_dim))
    run_criterion(criterion, 10, 300, body)


def test_criterion_11_properties(criterion):
    def body(c):
        spent = 0.0
        for prop in PROPERTIES:
            ok, secs, err = run_property(prop)
            spent += secs
            c.check(f"{prop.__name__} x{EXAMPLES}" + ("" if err is None else f" ({err!r:.80})"), ok)
        # properties already run by test_properties.py count with their own time
        c.start = time.perf_counter() - spent
        c.check("all properties ran", set(PROPERTY_RESULTS) >= {p.__name__ for p in PROPERTIES})
    run_criterion(criterion, 11, 300, body)


def test_llprop_oracle_against_direct_computation():
    """The llprop cases from the report agree with a direct call."""
    for name, case in (("c3", "i"), ("s3", "ii-a"), ("sl2_5", "ii-b")):
        assert check_llprop(covers(name)).case == case
    _, G, H, U, F = group_data("s3")
    assert check_llprop(ProjectiveCovers(G, F, H, U, seed=99)).case == "ii-a"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
