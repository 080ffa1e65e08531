"""Hom spaces, socle and radical series, Loewy layers and hearts."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..fflinalg import FFMatrix, linalg, poly
from ..fflinalg.matrix import charpoly_array
from ..homsolve import solve_homs
from ..meataxe import (
    DEFAULT_SEED,
    ResourceCapExceeded,
    SimpleCatalog,
    chop,
    evaluator,
    word_generator,
    word_kernel,
)
from ..repmodule import (
    ModuleError,
    Representation,
    Submodule,
    annihilator,
    dual,
    quotient_action,
    quotient_lift,
    sub_action,
)


@dataclass(frozen=True, eq=False)
class HomBasis:
    """Basis of Hom_kG(source, target); each X satisfies g_source X = X g_target."""

    source: Representation
    target: Representation
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def arrays(self) -> list[np.ndarray]:
        return [X.data for X in self.basis]


def _extend_span(F, space: linalg.EchelonSpace, v: np.ndarray, mats) -> None:
    """Grow an invariant space by the submodule generated by v."""
    frontier = space.add(np.atleast_2d(v))
    while frontier.shape[0] and space.dim < space.ncols:
        frontier = space.add(np.vstack([F.matmul(frontier, a) for a in mats]))


def _choose_seeds(M, N, pairs, rng, space, seeds, targets):
    F = M.field
    for GM, GN in pairs:
        if space.dim == M.dim:
            return
        if GM.shape[0] == 0:
            continue
        for _ in range(GM.shape[0]):
            if space.contains(GM):
                break
            c = F.random(GM.shape[0], rng)
            v = F.matmul(c[None, :], GM)[0]
            if not v.any() or space.contains(v):
                continue
            seeds.append(v)
            targets.append(GN)
            _extend_span(F, space, v, M.mats)
        for v in GM:
            if space.dim == M.dim:
                return
            if not space.contains(v):
                seeds.append(v)
                targets.append(GN)
                _extend_span(F, space, v, M.mats)


def _peak_pairs(catalog, M, N):
    for e in catalog:
        try:
            yield catalog.peak_kernel(e.id, M), catalog.peak_kernel(e.id, N)
        except ResourceCapExceeded:
            continue


def _primary_pairs(M, N, seed):
    """Generalized kernels of every charpoly factor of one word, on M and N."""
    F = M.field
    gen = word_generator(len(M.gens), F.q, seed)
    A = evaluator(M, gen).word(0)
    out = []
    for f, _ in poly.factor(F, charpoly_array(F, A), seed=seed):
        ft = poly.to_tuple(f)
        out.append((word_kernel(M, gen, 0, ft, True), word_kernel(N, gen, 0, ft, True)))
    return out


def hom_space(M: Representation, N: Representation, catalog: SimpleCatalog | None = None,
              seed: int = DEFAULT_SEED) -> HomBasis:
    """Full basis of Hom_kG(M, N).

    Generators of M are taken from generalized kernels of algebra
    elements (peakwords of ``catalog`` first); the image of each lies in
    the same generalized kernel of N, which keeps the unknowns few.
    """
    if M.field != N.field or len(M.gens) != len(N.gens):
        raise ModuleError("hom_space needs modules for the same group and field")
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return HomBasis(M, N, ())
    rng = np.random.default_rng(seed)
    space = linalg.EchelonSpace(F, M.dim)
    seeds: list[np.ndarray] = []
    targets: list[np.ndarray] = []
    if catalog is not None:
        _choose_seeds(M, N, _peak_pairs(catalog, M, N), rng, space, seeds, targets)
    if space.dim < M.dim:
        _choose_seeds(M, N, _primary_pairs(M, N, seed), rng, space, seeds, targets)
    Xs = solve_homs(F, M.mats, N.mats, np.array(seeds), targets)
    return HomBasis(M, N, tuple(FFMatrix(F, X) for X in Xs))


def hom_from_simple(catalog: SimpleCatalog, sid: str, M: Representation) -> list[np.ndarray]:
    """Basis of Hom(S, M) for the catalog simple S."""
    e = catalog[sid]
    K = catalog.std_kernel(sid, M)
    if K.shape[0] == 0:
        return []
    v = catalog.std_vector(sid)
    return solve_homs(M.field, e.module.mats, M.mats, v[None, :], [K])


def socle(M: Representation, catalog: SimpleCatalog) -> tuple[Submodule, dict]:
    """The socle of M and the multiplicity of each simple in it."""
    F = M.field
    rows, mult = [], {}
    for e in catalog:
        Xs = hom_from_simple(catalog, e.id, M)
        if Xs:
            mult[e.id] = len(Xs) // e.endo_dim
            rows.extend(Xs)
    if not rows:
        return Submodule(M, F.zeros((0, M.dim)), ()), mult
    ech, piv = linalg.rref(F, np.vstack(rows))
    return Submodule(M, ech, piv), mult


def socle_series(M: Representation, catalog: SimpleCatalog, seed: int = DEFAULT_SEED):
    """Bases (RREF, in M) of soc^1 < soc^2 < ... = M and layer multiplicities."""
    F = M.field
    n = M.dim
    current = F.zeros((0, n))
    piv: list[int] = []
    series, layers = [], []
    Mq = M
    while len(piv) < n:
        soc, mult = socle(Mq, catalog)
        if soc.dim == 0:
            # a simple submodule unknown to the catalog: chop to learn it
            before = len(catalog)
            chop(Mq, catalog, seed=seed)
            if len(catalog) == before:
                raise ModuleError("socle computation stalled on a nonzero module")
            continue
        lifted = quotient_lift(F, soc.basis, piv, n)
        current, piv = linalg.rref(F, np.vstack([current, lifted]))
        series.append(current)
        layers.append(mult)
        Mq = quotient_action(M, current, piv)
    return series, layers


@dataclass
class LoewyData:
    """Radical layers of a module.

    ``layers[i]`` maps simple ids to multiplicities in rad^i/rad^(i+1);
    ``radicals[i]`` is an RREF basis of rad^i(M) (``radicals[0]`` = M).
    ``socle_layers`` are the layers of the socle series of M, bottom up.
    """

    module: Representation
    layers: list
    radicals: list = dc_field(repr=False)
    socle_layers: list = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.layers)

    def composition(self) -> dict:
        out: dict = {}
        for layer in self.layers:
            for s, m in layer.items():
                out[s] = out.get(s, 0) + m
        return out

    def layer_dims(self, catalog: SimpleCatalog) -> list[int]:
        return [sum(m * catalog[s].dim for s, m in layer.items()) for layer in self.layers]


def loewy(M: Representation, catalog: SimpleCatalog, seed: int = DEFAULT_SEED,
          with_socle_layers: bool = False) -> LoewyData:
    """Radical layers of M, from the socle series of the dual module."""
    F = M.field
    comp = chop(M, catalog, seed=seed).multiplicities
    for sid in list(comp):
        catalog.dual_id(sid)
    D = dual(M)
    series, dlayers = socle_series(D, catalog, seed=seed)
    layers = [{catalog.dual_id(t): m for t, m in layer.items()} for layer in dlayers]
    radicals = [F.identity(M.dim)]
    for basis in series:
        radicals.append(annihilator(F, basis, M.dim)[0])
    data = LoewyData(M, layers, radicals)
    total = data.composition()
    if total != comp:
        raise AssertionError(f"Loewy layers {total} disagree with composition factors {comp}")
    if with_socle_layers:
        data.socle_layers = socle_series(M, catalog, seed=seed)[1]
    return data


def loewy_length(M: Representation, catalog: SimpleCatalog, seed: int = DEFAULT_SEED) -> int:
    return len(socle_series(M, catalog, seed=seed)[0])


def radical(M: Representation, catalog: SimpleCatalog) -> Submodule:
    """rad(M): the annihilator of soc(M*)."""
    for e in list(catalog):
        catalog.dual_id(e.id)
    soc, _ = socle(dual(M), catalog)
    if soc.dim == 0 and M.dim:
        # every module has a nonzero socle; learn missing simples first
        chop(dual(M), catalog, seed=catalog.seed)
        soc, _ = socle(dual(M), catalog)
    ech, piv = annihilator(M.field, soc.basis, M.dim)
    if soc.dim == M.dim:
        ech, piv = M.field.zeros((0, M.dim)), []
    return Submodule(M, ech, piv)


def head_multiplicities(M: Representation, catalog: SimpleCatalog) -> dict:
    """Multiplicity of each simple in M/rad(M).

    The catalog must hold the composition factors of M; their duals are
    added on demand.
    """
    for e in list(catalog):
        catalog.dual_id(e.id)
    _, mult = socle(dual(M), catalog)
    return {catalog.dual_id(t): m for t, m in mult.items()}


def heart(P: Representation, catalog: SimpleCatalog) -> Representation:
    """rad(P)/soc(P) as an explicit module."""
    F = P.field
    rad = radical(P, catalog)
    soc, _ = socle(P, catalog)
    if soc.dim and not rad.contains(soc.basis):
        raise ModuleError("socle is not contained in the radical (simple projective input?)")
    R = sub_action(P, rad.basis, rad.pivots)
    coords = soc.basis[:, list(rad.pivots)]
    ech, piv = linalg.rref(F, coords)
    return quotient_action(R, ech, piv).relabel(f"H({P.label})")
