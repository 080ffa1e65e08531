"""The per-job pipeline: catalog, covers, Loewy data, hearts, Cartan
matrix, blocks and structural checks, collected into plain data."""

from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction

from ..meataxe import SimpleCatalog, chop
from ..permgroup import p_part, quotient_action, sylow_shape
from ..repmodule import perm_rep
from ..structure import (
    ProjectiveCovers,
    block_partition,
    c_invariant,
    c_multiplicativity,
    cartan_matrix,
    check_llprop,
    heart,
    indecomposable_summands,
    kmu_check,
)
from .jobs import GroupJob

SCHEMA_VERSION = 1


class StageError(RuntimeError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, exc: BaseException):
        super().__init__(f"{stage}: {type(exc).__name__}: {exc}")
        self.stage = stage
        self.cause = exc


class Timer:
    """Wall-clock seconds per stage, kept apart from the results."""

    def __init__(self):
        self.seconds: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        t = time.perf_counter()
        try:
            yield
        except Exception as exc:  # noqa: BLE001 - rewrapped with the stage name
            if isinstance(exc, StageError):
                raise
            raise StageError(name, exc) from exc
        finally:
            self.seconds[name] = round(time.perf_counter() - t, 3)


def fraction_value(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def ordered_ids(catalog: SimpleCatalog) -> list[str]:
    """Simples ordered by dimension, then catalog insertion order."""
    ids = catalog.ids
    return sorted(ids, key=lambda s: (catalog[s].dim, ids.index(s)))


def heart_summary(P, catalog: SimpleCatalog, seed: int, block_splitting: bool = True) -> dict:
    """Dimension, summand dimensions and verdict for the heart of a PIM.

    An indecomposable verdict holds over the algebraic closure when every
    summand has End/J equal to the ground field and the simples of the
    block of P are absolutely simple; otherwise it carries the suffix
    "over GF(q) only".
    """
    if P.loewy.length == 1:
        return {"dim": 0, "verdict": "projective simple", "summands": [], "certified": True}
    Hh = heart(P.module, catalog)
    if Hh.dim == 0:
        return {"dim": 0, "verdict": "zero", "summands": [], "certified": True}
    parts = indecomposable_summands(Hh, catalog, seed=seed)
    certified = all(s.certified for s in parts)
    if len(parts) > 1:
        verdict = "decomposable"
    elif len(P.loewy.layers) == 3 and sum(P.loewy.layers[1].values()) == 1:
        verdict = "simple"
    else:
        verdict = "indecomposable"
    if verdict in ("simple", "indecomposable") and not (certified and block_splitting):
        verdict = f"{verdict} over GF({catalog.field.q}) only"
    return {
        "dim": Hh.dim,
        "verdict": verdict,
        "summands": sorted(s.module.dim for s in parts),
        "certified": certified,
    }


def catalog_export(catalog: SimpleCatalog, job: GroupJob) -> list[dict]:
    out = []
    for sid in ordered_ids(catalog):
        e = catalog[sid]
        out.append({
            "id": sid,
            "label": job.label(sid),
            "dim": e.dim,
            "endo_dim": e.endo_dim,
            "fingerprint": [list(part) if isinstance(part, tuple) else part for part in e.fingerprint],
            "matrices": [m.tolist() for m in e.module.mats],
        })
    return out


def build_covers(job: GroupJob, seed: int) -> ProjectiveCovers:
    G = job.group()
    F = job.field
    H = job.subgroup(job.pprime_subgroup)
    if job.sylow_subgroup is not None:
        U = job.subgroup(job.sylow_subgroup)
    else:
        from ..permgroup import p_subgroup_search

        U = p_subgroup_search(G, job.p, "sylow_p", seed=seed)
    return ProjectiveCovers(G, F, H, U, seed=seed)


def chop_stage(job: GroupJob, seed: int, timer: Timer) -> tuple[ProjectiveCovers, dict]:
    """The catalog from the permutation module and the induced module."""
    with timer.stage("setup"):
        covers = build_covers(job, seed)
    cat = covers.catalog
    with timer.stage("chop"):
        perm = chop(perm_rep(covers.G, covers.F), cat, seed=seed)
        ind = chop(covers.induced, cat, seed=seed)
    return covers, {
        "permutation_module": {"dim": covers.G.degree, "factors": _named(perm.multiplicities, job)},
        "induced_module": {"dim": covers.induced.dim, "factors": _named(ind.multiplicities, job)},
    }


def _named(mult: dict, job: GroupJob) -> dict:
    return {job.label(s): m for s, m in sorted(mult.items())}


def group_section(job: GroupJob, covers: ProjectiveCovers) -> dict:
    G, U, H = covers.G, covers.U, covers.H
    return {
        "degree": G.degree,
        "ngens": len(G.generators),
        "order": G.order(),
        "p": job.p,
        "q": job.field.q,
        "sylow_order": U.order(),
        "sylow_shape": sylow_shape(U, job.p),
        "pprime_order": H.order(),
        "index": G.order() // H.order(),
    }


DEPTHS = ("pims", "loewy", "verify")


def analyze(job: GroupJob, seed: int, timer: Timer, depth: str = "verify",
            covers: ProjectiveCovers | None = None,
            chopped: dict | None = None) -> tuple[dict, ProjectiveCovers]:
    """Run the pipeline; returns the deterministic results and the covers.

    ``depth`` is ``"pims"`` (covers, Cartan matrix, blocks), ``"loewy"``
    (adds Loewy layers and hearts) or ``"verify"`` (adds the KMU, Loewy
    length 3 and c-invariant checks).
    """
    if depth not in DEPTHS:
        raise ValueError(f"unknown depth {depth!r}")
    if covers is None:
        covers, chopped = chop_stage(job, seed, timer)
    cat = covers.catalog
    p = job.p
    with timer.stage("covers"):
        covers.all_covers()
    with timer.stage("loewy"):
        ids = ordered_ids(cat)
        for sid in ids:
            covers.with_loewy(sid)
    with timer.stage("cartan"):
        C = cartan_matrix(covers, ids)
        B = block_partition(C, cat.trivial_id)
        principal = [s for s in ids if s in B.principal]
        C0 = C.restrict(principal)
        split_block = {s: all(cat[t].endo_dim == 1 for t in B.block_of(s)) for s in ids}
    pims = []
    with timer.stage("hearts"):
        for sid in ids:
            P = covers.pims[sid]
            row = {
                "head": sid,
                "label": job.label(sid),
                "dim": P.dim,
                "source": P.source,
                "loewy_length": P.loewy.length,
                "c_invariant": fraction_value(c_invariant(P, covers.G, p)),
            }
            if depth != "pims":
                row["layers"] = [_named(layer, job) for layer in P.loewy.layers]
                row["heart"] = heart_summary(P, cat, seed, split_block[sid])
            pims.append(row)
    out = {
        "group": group_section(job, covers),
        "chop": chopped,
        "catalog": {"splitting": cat.splitting, "simples": catalog_export(cat, job)},
        "cartan": {"simples": [job.label(s) for s in ids], "matrix": C.as_lists(),
                   "symmetric": C.is_symmetric()},
        "blocks": [
            {"simples": [job.label(s) for s in ids if s in b],
             "dims": [cat[s].dim for s in ids if s in b],
             "splitting": all(cat[s].endo_dim == 1 for s in b),
             "defect_zero": len(b) == 1 and C[b[0], b[0]] == 1 and covers.pims[b[0]].dim == cat[b[0]].dim}
            for b in sorted(B.blocks, key=lambda b: min(ids.index(s) for s in b))
        ],
        "principal_block": {
            "simples": [job.label(s) for s in principal],
            "cartan": C0.as_lists(),
            "cartan_det": C0.determinant(),
            "loewy_length": max(covers.pims[s].loewy.length for s in principal),
        },
        "pims": pims,
    }
    if depth != "verify":
        return out, covers
    with timer.stage("kmu"):
        out["kmu"] = []
        for sid in ids:
            if covers.pims[sid].loewy.length == 1:
                continue
            r = kmu_check(sid, cat, covers.U, p, seed=seed).as_dict()
            r["simple"] = job.label(sid)
            out["kmu"].append(r)
    if p % 2:
        with timer.stage("llprop"):
            v = check_llprop(covers, seed=seed).as_dict()
            v["heart_id"] = job.label(v["heart_id"]) if v["heart_id"] else None
            out["llprop"] = v
    if job.normal_subgroup is not None:
        with timer.stage("c_multiplicativity"):
            N = job.subgroup(job.normal_subgroup)
            rows = c_multiplicativity(covers, N, seed=seed)
            out["c_multiplicativity"] = [
                {"simple": job.label(r.simple), "c": fraction_value(r.c), "c_kN": fraction_value(r.c_kN),
                 "c_quotient": fraction_value(r.c_quotient), "holds": r.holds}
                for r in rows
            ]
    return out, covers


def order_section(job: GroupJob) -> dict:
    G = job.group()
    n = G.order()
    return {
        "degree": G.degree,
        "order": n,
        "declared_order": job.order,
        "p_part": p_part(n, job.p),
        "pprime_order": job.subgroup(job.pprime_subgroup).order(),
        "sylow_order": job.subgroup(job.sylow_subgroup).order() if job.sylow_subgroup else None,
        "normal_quotient_order": (quotient_action(G, job.subgroup(job.normal_subgroup)).order()
                                  if job.normal_subgroup else None),
    }
