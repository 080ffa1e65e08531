"""Structural checks: Heller translates, splitting by disjoint heads, the
KMU hypotheses, the Loewy length 3 classification and c-invariants of
quotients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..fflinalg import linalg
from ..meataxe import DEFAULT_SEED, SimpleCatalog, chop
from ..permgroup import PermGroup, frattini_pgroup, p_part, quotient_action, sylow_shape
from ..repmodule import (
    Representation,
    Submodule,
    cofixed_dim,
    fixed_dim,
    inflate,
    quotient_action as module_quotient,
    restrict,
    sub_action,
)
from .algebra import indecomposable_summands
from .hom import head_multiplicities, heart, hom_space
from .pims import ProjectiveCovers, c_invariant


# -- Heller translate -------------------------------------------------------

def omega(M: Representation, covers: ProjectiveCovers, seed: int = DEFAULT_SEED,
          tries: int = 20) -> Representation:
    """Kernel of a projective cover map onto M (a module for covers.G)."""
    F = M.field
    cat = covers.catalog
    chop(M, cat, seed=seed)
    heads = head_multiplicities(M, cat)
    rng = np.random.default_rng(seed)
    homs = {s: hom_space(covers.cover(s).module, M, cat, seed=seed).arrays for s in heads}
    for _ in range(tries):
        blocks = []
        for s, m in sorted(heads.items()):
            for _ in range(m):
                c = F.random(len(homs[s]), rng)
                X = F.zeros(homs[s][0].shape)
                for ci, Y in zip(c, homs[s]):
                    if ci:
                        X = F.vadd(X, F.vmul(Y, int(ci)))
                blocks.append(X)
        pi = np.vstack(blocks)  # rows: basis of the direct sum of covers
        if linalg.rank(F, pi) == M.dim:
            K = linalg.nullspace(F, pi)
            mats = _block_diag_mats(F, [covers.cover(s).module for s, m in sorted(heads.items()) for _ in range(m)])
            ech, piv = linalg.rref(F, K)
            return sub_action(_from_mats(M.group, F, mats), ech, piv).relabel(f"Omega({M.label})")
    raise RuntimeError("no surjection from the projective cover was found")


def _block_diag_mats(F, mods):
    n = sum(m.dim for m in mods)
    out = []
    for j in range(len(mods[0].gens)):
        A = F.zeros((n, n))
        o = 0
        for m in mods:
            A[o : o + m.dim, o : o + m.dim] = m.mats[j]
            o += m.dim
        out.append(A)
    return out


def _from_mats(G, F, mats):
    from ..repmodule import from_arrays

    return from_arrays(G, F, mats, "cover", dim=mats[0].shape[0] if mats else None)


# -- splitting by disjoint heads ------------------------------------------------

@dataclass
class HeadSplit:
    """M = N + K with K the kernel of an epimorphism M -> N."""

    submodule: np.ndarray
    complement: np.ndarray


def try_split_by_heads(M: Representation, N: Submodule, catalog: SimpleCatalog,
                       seed: int = DEFAULT_SEED, tries: int = 20) -> HeadSplit | None:
    """Split off N when N and M/N share no head constituent and an
    epimorphism M -> N exists; None when no split is found."""
    F = M.field
    Nm = N.module()
    Q = N.quotient()
    chop(M, catalog, seed=seed)
    if set(head_multiplicities(Nm, catalog)) & set(head_multiplicities(Q, catalog)):
        return None
    homs = hom_space(M, Nm, catalog, seed=seed).arrays
    if not homs:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        X = F.zeros(homs[0].shape)
        for ci, Y in zip(F.random(len(homs), rng), homs):
            if ci:
                X = F.vadd(X, F.vmul(Y, int(ci)))
        if linalg.rank(F, X) == Nm.dim:
            K = linalg.nullspace(F, X)
            return HeadSplit(N.basis, linalg.rref(F, K)[0])
    return None


# -- KMU hypotheses ------------------------------------------------------------

@dataclass
class KMUReport:
    simple: str
    fixed_dim: int
    cofixed_dim: int
    frattini_restriction_indecomposable: bool
    frattini_order: int
    sylow_shape: str
    hypothesis_holds: bool
    degenerate: bool
    passes: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def kmu_check(sid: str, catalog: SimpleCatalog, U: PermGroup, p: int,
              seed: int = DEFAULT_SEED) -> KMUReport:
    """Fixed and cofixed points of S on U and indecomposability of S on Phi(U)."""
    S = catalog[sid].module
    F = S.field
    SU = restrict(S, U)
    fx = fixed_dim(SU, U)
    cfx = cofixed_dim(SU, U)
    Phi = frattini_pgroup(U, p)
    if Phi.order() == 1 or S.dim == 1:
        indec = S.dim == 1
    else:
        SP = restrict(S, Phi)
        indec = len(indecomposable_summands(SP, SimpleCatalog(Phi, F, seed), seed=seed)) == 1
    shape = sylow_shape(U, p)
    return KMUReport(
        simple=sid,
        fixed_dim=fx,
        cofixed_dim=cfx,
        frattini_restriction_indecomposable=indec,
        frattini_order=Phi.order(),
        sylow_shape=shape,
        hypothesis_holds=shape == "other",
        degenerate=S.dim == 1,
        passes=fx == 1 and cfx == 1 and indec,
    )


# -- the Loewy length 3 classification ---------------------------------------------

@dataclass
class LLVerdict:
    ll_pk: int
    applicable: bool
    heart_simple: bool | None = None
    heart_id: str | None = None
    case: str | None = None
    sylow_order: int = 0
    details: str = ""

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _is_trivial_module(M: Representation, catalog: SimpleCatalog) -> bool:
    return M.dim == 1 and chop(M, catalog, seed=catalog.seed).multiplicities == {catalog.trivial_id: 1}


def check_llprop(covers: ProjectiveCovers, seed: int = DEFAULT_SEED) -> LLVerdict:
    """Classify G (p odd) by the structure of P(k) when LL(P(k)) <= 4."""
    cat = covers.catalog
    p = covers.p
    kid = cat.trivial_id
    Pk = covers.with_loewy(kid)
    ll = Pk.loewy.length
    order_p = p_part(covers.G.order(), p)
    if p == 2:
        return LLVerdict(ll, False, sylow_order=order_p, details="p = 2")
    if ll > 4:
        return LLVerdict(ll, False, sylow_order=order_p, details="LL(P(k)) > 4")
    mid = Pk.loewy.layers[1:-1]
    simple = ll == 3 and len(mid) == 1 and sum(mid[0].values()) == 1
    verdict = LLVerdict(ll, True, heart_simple=simple, sylow_order=order_p)
    if not simple:
        verdict.details = "LL(P(k)) <= 4 but not 3 with simple heart"
        return verdict
    sid = next(iter(mid[0]))
    verdict.heart_id = sid
    if sid == kid:
        verdict.case = "i" if (p == 3 and order_p == 3) else "contradiction"
        return verdict
    HS = heart(covers.cover(sid).module, cat)
    if _is_trivial_module(HS, cat):
        nilpotent = len(_principal_simples(covers)) == 1
        ok = p == 3 and order_p == 3 and not nilpotent
        verdict.case = "ii-a" if ok else "contradiction"
        return verdict
    parts = indecomposable_summands(HS, cat, seed=seed)
    if len(parts) > 1 and any(_is_trivial_module(s.module, cat) for s in parts):
        verdict.case = "ii-b"
    else:
        verdict.case = "contradiction"
    return verdict


def _principal_simples(covers: ProjectiveCovers) -> list:
    from .pims import block_partition, cartan_matrix

    C = cartan_matrix(covers)
    return block_partition(C, covers.catalog.trivial_id).principal


# -- c-invariants through a normal subgroup ------------------------------------------

@dataclass
class CMultRow:
    simple: str
    quotient_simple: str
    c: Fraction
    c_kN: Fraction
    c_quotient: Fraction

    @property
    def holds(self) -> bool:
        return self.c == self.c_kN * self.c_quotient


def c_multiplicativity(covers: ProjectiveCovers, N: PermGroup, seed: int = DEFAULT_SEED) -> list[CMultRow]:
    """Compare c(S) with c(k_N) c(S-bar) for every simple S of G/N, with N
    a normal p-subgroup, S-bar the G/N-module inflated to S."""
    G, F, p = covers.G, covers.F, covers.p
    cat = covers.catalog
    covers.all_covers()
    trivial_N = PermGroup([], N.degree)
    cN = ProjectiveCovers(N, F, trivial_N, N, seed=seed)
    c_kN = c_invariant(cN.cover(cN.catalog.trivial_id), N, p)
    Gbar = quotient_action(G, N)
    Hbar, Ubar = _quotient_subgroups(Gbar, p, seed)
    cbar = ProjectiveCovers(Gbar, F, Hbar, Ubar, seed=seed)
    cbar.all_covers()
    rows = []
    for e in cbar.catalog:
        S = inflate(e.module, G)
        sid = cat.find(S)
        if sid is None:
            sid = chop(S, cat, seed=seed).as_list()[0][0]
        rows.append(CMultRow(
            simple=sid,
            quotient_simple=e.id,
            c=c_invariant(covers.cover(sid), G, p),
            c_kN=c_kN,
            c_quotient=c_invariant(cbar.cover(e.id), Gbar, p),
        ))
    rows.sort(key=lambda r: (cat[r.simple].dim, cat.ids.index(r.simple)))
    return rows


def _quotient_subgroups(Q: PermGroup, p: int, seed: int):
    """A p'-subgroup and a Sylow p-subgroup of a small quotient group."""
    from ..permgroup import p_subgroup_search

    if Q.order() % p:
        return Q, PermGroup([], Q.degree)
    H = p_subgroup_search(Q, p, "hall_p_prime_heuristic", seed=seed)
    U = p_subgroup_search(Q, p, "sylow_p", seed=seed)
    return H, U
