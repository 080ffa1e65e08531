"""Group job files: loading, validation and the expectation vocabulary."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..fflinalg import FieldError, GF, field as make_field, is_prime
from ..permgroup import GroupError, PermGroup, p_part, perm_from_images


class InputError(ValueError):
    """A job or suite file that cannot be used; the message names the field."""


# Expectation keys and the kind of value each compares.  Simple modules
# are named by their conventional labels (the job's ``labels`` map) or, when no
# label is given, by catalog id.
EXPECTATION_KEYS = {
    "order": "int",
    "induced_dim": "int",
    "b0_simples": "labels",
    "loewy_lengths": "label->int",
    "ll_b0": "int",
    "c11": "int",
    "cartan_b0": "matrix",
    "cartan_det_b0": "int",
    "block_dims": "blocks",
    "defect_zero_dims": "ints",
    "hearts": "label->verdict",
    "decomposable_hearts": "int",
    "c_invariants": "label->int",
    "kmu_pass": "label->bool",
    "kmu_consistent": "bool",
    "llprop_case": "str",
    "c_multiplicativity": "bool",
}

HEART_VERDICTS = ("simple", "indecomposable", "decomposable", "zero")

JOB_FIELDS = {
    "name", "degree", "order", "generators", "p", "field", "pprime_subgroup",
    "sylow_subgroup", "normal_subgroup", "expected", "labels", "provenance",
}


@dataclass
class GroupJob:
    """A validated group job.

    Permutations are stored 0-based; files use 1-based image lists.
    """

    name: str
    degree: int
    generators: list
    p: int
    field: GF
    pprime_subgroup: list
    sylow_subgroup: list | None = None
    normal_subgroup: list | None = None
    order: int | None = None
    expected: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)
    path: str = ""

    def group(self) -> PermGroup:
        return PermGroup(self.generators, self.degree, self.name)

    def subgroup(self, gens: list | None) -> PermGroup:
        return PermGroup(gens or [], self.degree)

    def label(self, sid: str) -> str:
        return self.labels.get(sid, sid)

    def key_data(self) -> dict:
        """Everything that determines the computed results."""
        return {
            "degree": self.degree,
            "generators": [list(g) for g in self.generators],
            "p": self.p,
            "q": self.field.q,
            "pprime_subgroup": [list(g) for g in self.pprime_subgroup],
            "sylow_subgroup": [list(g) for g in self.sylow_subgroup or []],
            "normal_subgroup": [list(g) for g in self.normal_subgroup or []],
        }


def shipped_groups() -> Path:
    return Path(str(resources.files("modrep") / "data" / "groups"))


def shipped_suites() -> Path:
    return Path(str(resources.files("modrep") / "data" / "suites"))


def resolve(path_or_name: str, kind: str = "groups") -> Path:
    """A path, or the name of a shipped group (``s6``) or suite (``full``)."""
    p = Path(path_or_name)
    if p.exists():
        return p
    base = shipped_groups() if kind == "groups" else shipped_suites()
    cand = base / f"{path_or_name}.json"
    if cand.exists():
        return cand
    raise InputError(f"{path_or_name}: no such file or shipped {kind[:-1]}")


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _perm_list(path, key, value, degree) -> list:
    if not isinstance(value, list):
        raise InputError(f"{path}: field '{key}' must be a list of image lists")
    out = []
    for i, images in enumerate(value):
        where = f"{path}: field '{key}[{i}]'"
        if not isinstance(images, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in images):
            raise InputError(f"{where}: expected a list of integers")
        if len(images) != degree:
            raise InputError(f"{where}: has {len(images)} images, degree is {degree}")
        if sorted(images) != list(range(1, degree + 1)):
            raise InputError(f"{where}: images {images} are not a bijection of 1..{degree}")
        out.append(perm_from_images(images))
    return out


def _check_expected(path, expected) -> dict:
    if not isinstance(expected, dict):
        raise InputError(f"{path}: field 'expected' must be an object")
    for key, value in expected.items():
        if key not in EXPECTATION_KEYS:
            raise InputError(f"{path}: field 'expected.{key}' is not in the vocabulary "
                             f"{sorted(EXPECTATION_KEYS)}")
        if key == "hearts":
            bad = [v for v in value.values() if v not in HEART_VERDICTS]
            if bad:
                raise InputError(f"{path}: field 'expected.hearts': unknown verdicts {bad}")
    return expected


def load_group(path: str | Path, check_subgroups: bool = True) -> GroupJob:
    """Read and validate a group job file."""
    path = Path(path)
    data = _read_json(path)
    unknown = sorted(set(data) - JOB_FIELDS)
    if unknown:
        raise InputError(f"{path}: unknown fields {unknown}")
    for key in ("name", "degree", "generators", "p", "pprime_subgroup"):
        if key not in data:
            raise InputError(f"{path}: missing field '{key}'")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise InputError(f"{path}: field 'degree' must be a positive integer")
    p = data["p"]
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"{path}: field 'p' must be a prime")
    gens = _perm_list(path, "generators", data["generators"], degree)
    if not gens:
        raise InputError(f"{path}: field 'generators' must be nonempty")
    fspec = data.get("field")
    try:
        if fspec is None:
            F = make_field(p)
        elif isinstance(fspec, dict) and fspec.get("p") == p and isinstance(fspec.get("deg"), int):
            F = make_field(p, fspec["deg"])
        else:
            raise InputError(f"{path}: field 'field' must be {{\"p\": {p}, \"deg\": k}}")
    except FieldError as exc:
        raise InputError(f"{path}: field 'field': {exc}") from exc
    job = GroupJob(
        name=str(data["name"]),
        degree=degree,
        generators=gens,
        p=p,
        field=F,
        pprime_subgroup=_perm_list(path, "pprime_subgroup", data["pprime_subgroup"], degree),
        sylow_subgroup=(_perm_list(path, "sylow_subgroup", data["sylow_subgroup"], degree)
                        if data.get("sylow_subgroup") is not None else None),
        normal_subgroup=(_perm_list(path, "normal_subgroup", data["normal_subgroup"], degree)
                         if data.get("normal_subgroup") is not None else None),
        order=data.get("order"),
        expected=_check_expected(path, data.get("expected", {})),
        labels=dict(data.get("labels", {})),
        path=str(path),
    )
    if check_subgroups:
        validate_subgroups(job)
    return job


def validate_subgroups(job: GroupJob) -> None:
    """Order cross-check and subgroup membership."""
    G = job.group()
    n = G.order()
    where = job.path or job.name
    if job.order is not None and job.order != n:
        raise InputError(f"{where}: field 'order' is {job.order} but the generators give {n}")
    for key in ("pprime_subgroup", "sylow_subgroup", "normal_subgroup"):
        gens = getattr(job, key)
        if gens is None:
            continue
        for i, g in enumerate(gens):
            if not G.contains(g):
                raise InputError(f"{where}: field '{key}[{i}]' is not an element of the group")
    H = job.subgroup(job.pprime_subgroup)
    if H.order() % job.p == 0:
        raise InputError(f"{where}: field 'pprime_subgroup' has order {H.order()}, divisible by p")
    if job.sylow_subgroup is not None:
        U = job.subgroup(job.sylow_subgroup)
        if U.order() != p_part(n, job.p):
            raise InputError(f"{where}: field 'sylow_subgroup' has order {U.order()}, "
                             f"not {p_part(n, job.p)}")
    if job.normal_subgroup is not None:
        N = job.subgroup(job.normal_subgroup)
        try:
            normal = N.is_normal_in(G)
        except GroupError:
            normal = False
        if not normal:
            raise InputError(f"{where}: field 'normal_subgroup' is not normal")


@dataclass
class Suite:
    jobs: list
    seed: int | None
    path: str


def load_suite(path: str | Path) -> Suite:
    """A suite file: {"jobs": [paths relative to the suite file], "seed": int}."""
    path = Path(path)
    data = _read_json(path)
    jobs = data.get("jobs")
    if not isinstance(jobs, list) or not all(isinstance(j, str) for j in jobs):
        raise InputError(f"{path}: field 'jobs' must be a list of paths")
    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or not 0 <= seed < 2**64):
        raise InputError(f"{path}: field 'seed' must be an unsigned 64-bit integer")
    unknown = sorted(set(data) - {"jobs", "seed"})
    if unknown:
        raise InputError(f"{path}: unknown fields {unknown}")
    paths = [str((path.parent / j).resolve()) if not Path(j).is_absolute() else j for j in jobs]
    return Suite(paths, seed, str(path))


def is_suite_file(path: Path) -> bool:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return False
    return isinstance(data, dict) and "jobs" in data
