"""Exact comparison of computed results with a job's expectations."""

from __future__ import annotations

from .jobs import GroupJob

_INDECOMPOSABLE = ("simple", "indecomposable")


def _by_label(rows: list, key: str, value: str) -> dict:
    return {r[key]: r[value] for r in rows}


def _heart_matches(expected: str, actual: str) -> bool:
    if expected == "indecomposable":
        return actual in _INDECOMPOSABLE
    return expected == actual


def actual_value(key: str, res: dict, expected):
    """The computed counterpart of one expectation."""
    pims = res["pims"]
    if key == "order":
        return res["group"]["order"]
    if key == "induced_dim":
        return res["chop"]["induced_module"]["dim"]
    if key == "b0_simples":
        return sorted(res["principal_block"]["simples"])
    if key == "loewy_lengths":
        got = _by_label(pims, "label", "loewy_length")
        return {s: got.get(s) for s in expected}
    if key == "ll_b0":
        return res["principal_block"]["loewy_length"]
    if key == "c11":
        return res["cartan"]["matrix"][0][0]
    if key == "cartan_b0":
        return res["principal_block"]["cartan"]
    if key == "cartan_det_b0":
        return res["principal_block"]["cartan_det"]
    if key == "block_dims":
        return sorted(sorted(b["dims"]) for b in res["blocks"])
    if key == "defect_zero_dims":
        return sorted(d for b in res["blocks"] if b["defect_zero"] for d in b["dims"])
    if key == "hearts":
        got = {r["label"]: r["heart"]["verdict"] for r in pims}
        return {s: got.get(s) for s in expected}
    if key == "decomposable_hearts":
        return sum(r["heart"]["verdict"] == "decomposable" for r in pims)
    if key == "c_invariants":
        got = _by_label(pims, "label", "c_invariant")
        return {s: got.get(s) for s in expected}
    if key == "kmu_pass":
        got = _by_label(res["kmu"], "simple", "passes")
        return {s: got.get(s) for s in expected}
    if key == "kmu_consistent":
        return kmu_consistent(res)
    if key == "llprop_case":
        return res.get("llprop", {}).get("case")
    if key == "c_multiplicativity":
        rows = res.get("c_multiplicativity")
        return None if rows is None else all(r["holds"] for r in rows)
    raise KeyError(key)


def kmu_consistent(res: dict) -> bool:
    """Every simple passing the KMU check under a non-cyclic, non-maximal
    class Sylow subgroup has an indecomposable heart."""
    verdicts = {r["label"]: r["heart"]["verdict"] for r in res["pims"]}
    return all(
        verdicts.get(r["simple"]) in _INDECOMPOSABLE
        for r in res["kmu"]
        if r["passes"] and r["hypothesis_holds"] and not r["degenerate"]
    )


def matches(key: str, expected, actual) -> bool:
    if key == "hearts":
        return all(a is not None and _heart_matches(e, a) for e, a in
                   ((expected[s], actual[s]) for s in expected))
    if key == "b0_simples":
        return sorted(expected) == actual
    if key == "block_dims":
        return sorted(sorted(b) for b in expected) == actual
    if key == "defect_zero_dims":
        return sorted(expected) == actual
    return expected == actual


def compare(job: GroupJob, res: dict) -> list[dict]:
    rows = []
    for key in sorted(job.expected):
        exp = job.expected[key]
        act = actual_value(key, res, exp)
        rows.append({"key": key, "expected": exp, "actual": act, "pass": matches(key, exp, act)})
    return rows
