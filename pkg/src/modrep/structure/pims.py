"""Projective indecomposable modules, Cartan matrices, blocks and c-invariants."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from ..fflinalg import GF, linalg
from ..meataxe import DEFAULT_SEED, ResourceCapExceeded, SimpleCatalog, chop
from ..permgroup import CosetTable, PermGroup, p_part
from ..repmodule import (
    ModuleError,
    Representation,
    dual,
    fixed_dim,
    induce,
    restrict,
    sub_action,
    tensor,
    trivial,
)
from .algebra import indecomposable_summands
from .hom import LoewyData, head_multiplicities, hom_space, loewy


class CoverNotFound(RuntimeError):
    """No source module contained the requested projective cover."""


@dataclass
class PIM:
    """The projective cover P(S) of a catalog simple.

    ``source`` names the projective module it was cut from and
    ``generator`` is the vector (in that module) spinning up P(S).
    """

    head: str
    module: Representation
    source: str
    generator: np.ndarray = dc_field(repr=False)
    loewy: LoewyData | None = dc_field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class CartanMatrix:
    """c[S][T] = multiplicity of T as a composition factor of P(S)."""

    simples: list
    entries: np.ndarray

    def __getitem__(self, key):
        s, t = key
        return int(self.entries[self.simples.index(s), self.simples.index(t)])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def restrict(self, ids) -> "CartanMatrix":
        idx = [self.simples.index(s) for s in ids]
        return CartanMatrix(list(ids), self.entries[np.ix_(idx, idx)])

    def determinant(self) -> int:
        """Exact integer determinant (fraction-free elimination)."""
        a = [[int(x) for x in row] for row in self.entries]
        n = len(a)
        if n == 0:
            return 1
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((r for r in range(k + 1, n) if a[r][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def as_lists(self) -> list:
        return [[int(x) for x in row] for row in self.entries]


@dataclass
class BlockPartition:
    blocks: list
    principal: list

    def block_of(self, sid: str) -> list:
        return next(b for b in self.blocks if sid in b)

    def defect_zero(self, cartan: CartanMatrix) -> list:
        return [b for b in self.blocks if len(b) == 1 and cartan[b[0], b[0]] == 1]


def block_partition(C: CartanMatrix, trivial_id: str) -> BlockPartition:
    """Connected components of the graph with edges where c_ST != 0."""
    ids = list(C.simples)
    parent = {s: s for s in ids}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for i, s in enumerate(ids):
        for j, t in enumerate(ids):
            if C.entries[i, j] or C.entries[j, i]:
                parent[find(s)] = find(t)
    groups: dict = {}
    for s in ids:
        groups.setdefault(find(s), []).append(s)
    blocks = sorted(groups.values(), key=lambda b: ids.index(b[0]))
    principal = next(b for b in blocks if trivial_id in b)
    return BlockPartition(blocks, principal)


def _spin(F: GF, mats, v: np.ndarray):
    return linalg.spin(F, v[None, :], mats)


class ProjectiveCovers:
    """Builds P(S) for every simple S of G by cutting cyclic projective
    submodules out of modules induced from simple kH-modules and, failing
    that, out of P(T) (x) S for covers P(T) already found.

    A vector v in the peakword generalized kernel of S generates a
    quotient of P(S); it is P(S) exactly when it is projective, which is
    tested by freeness over the Sylow subgroup U.
    """

    def __init__(self, G: PermGroup, F: GF, H: PermGroup, U: PermGroup,
                 catalog: SimpleCatalog | None = None, seed: int = DEFAULT_SEED, tries: int = 24,
                 max_source_dim: int = 4096):
        self.G, self.F, self.H, self.U = G, F, H, U
        self.p = F.p
        if H.order() % self.p == 0:
            raise ModuleError(f"the subgroup of order {H.order()} is not a p'-subgroup")
        if U.order() != p_part(G.order(), self.p):
            raise ModuleError("U is not a Sylow p-subgroup")
        self.catalog = catalog if catalog is not None else SimpleCatalog(G, F, seed)
        self.seed = seed
        self.tries = tries
        self.rng = np.random.default_rng(seed)
        self._U_words = [G.word(u) for u in U.generators]
        self._table = CosetTable(G, H)
        self.induced = induce(trivial(H, F), G, self._table).relabel("induce(k_H)")
        self._h_cat: SimpleCatalog | None = None
        self._induced = {}
        self.max_source_dim = max_source_dim
        self.pims: dict[str, PIM] = {}

    # -- single covers ----------------------------------------------------

    def is_projective(self, M: Representation) -> bool:
        n = self.U.order()
        return M.dim % n == 0 and fixed_dim(M, self._U_words) * n == M.dim

    def cut(self, sid: str, X: Representation, source: str) -> PIM | None:
        """Try to cut P(sid) out of the projective module X.

        The cut is accepted once it is projective with head exactly S.
        Otherwise (no peakword, or a simple still missing from the
        catalog) the cyclic module is split into indecomposable summands.
        """
        F = self.F
        try:
            K = self.catalog.peak_kernel(sid, X)
        except ResourceCapExceeded:
            K = self.catalog.weak_peak_kernel(sid, X)[0]
        if K.shape[0] == 0:
            return None
        for _ in range(self.tries):
            v = F.matmul(F.random(K.shape[0], self.rng)[None, :], K)[0]
            if not v.any():
                continue
            ech, piv = _spin(F, X.mats, v)
            P = sub_action(X, ech, piv).relabel(f"P({sid})")
            if not self.is_projective(P):
                continue
            # a cyclic projective module whose head is S is P(S)
            chop(P, self.catalog, seed=self.seed)
            if head_multiplicities(P, self.catalog) == {sid: 1}:
                return PIM(sid, P, source, v)
            for part in indecomposable_summands(P, self.catalog, seed=self.seed):
                Q = part.module
                if head_multiplicities(Q, self.catalog) == {sid: 1}:
                    return PIM(sid, Q.relabel(f"P({sid})"), f"{source}, split", part.basis[0])
        return None

    def simple_projective(self, sid: str) -> PIM | None:
        S = self.catalog[sid].module
        if self.is_projective(S):
            return PIM(sid, S.relabel(f"P({sid})"), "simple", self.catalog.std_vector(sid))
        return None

    def _h_simples(self) -> list:
        """Simple kH-modules (H is a p'-group, so its regular module is semisimple)."""
        if self._h_cat is None:
            H, F = self.H, self.F
            self._h_cat = SimpleCatalog(H, F, self.seed)
            if H.generators:
                one = PermGroup([], H.degree)
                chop(induce(trivial(one, F), H), self._h_cat, seed=self.seed)
        return [e for e in self._h_cat]

    def _induced_from(self, vid: str) -> Representation:
        if vid == self._h_cat.trivial_id:
            return self.induced
        if vid not in self._induced:
            V = self._h_cat[vid].module
            self._induced[vid] = induce(V, self.G, self._table).relabel(f"induce({vid}_H)")
        return self._induced[vid]

    def _candidates(self, sid: str):
        """Projective modules containing P(sid), smallest first, built lazily."""
        S = self.catalog[sid].module
        out = []
        index = len(self._table)
        S_H = None
        for e in self._h_simples():
            if e.id == self._h_cat.trivial_id:
                ok = True  # checked by the cut itself
            else:
                S_H = S_H if S_H is not None else restrict(S, self.H)
                ok = hom_space(e.module, S_H).dim > 0
            if ok:
                out.append((index * e.dim, 0, f"induce({e.id}_H)", lambda v=e.id: self._induced_from(v)))
        out.sort(key=lambda c: c[:3])
        yield from out
        out = []
        for t, P in self.pims.items():
            for e in self.catalog:
                if e.id == self.catalog.trivial_id or P.dim * e.dim > self.max_source_dim:
                    continue
                comp = chop(tensor(S, dual(e.module)), self.catalog, seed=self.seed).multiplicities
                if comp.get(t):
                    out.append((P.dim * e.dim, 1, f"P({t})x{e.id}",
                                lambda P=P, T=e.module: tensor(P.module, T)))
        out.sort(key=lambda c: c[:3])
        yield from out

    def cover(self, sid: str) -> PIM:
        if sid in self.pims:
            return self.pims[sid]
        pim = self.simple_projective(sid)
        if pim is None and sid != self.catalog.trivial_id:
            self.cover(self.catalog.trivial_id)
        tried = []
        if pim is None:
            for _, _, label, build in self._candidates(sid):
                tried.append(label)
                pim = self.cut(sid, build(), label)
                if pim is not None:
                    break
        if pim is None:
            raise CoverNotFound(f"no projective cover found for {sid}; tried {tried}")
        self.pims[sid] = pim
        return pim

    # -- all covers ----------------------------------------------------------

    def weighted_total(self) -> Fraction:
        """Sum over found covers of dim S * dim P(S) / endo_dim(S)."""
        return sum(
            (Fraction(self.catalog[s].dim * P.dim, self.catalog[s].endo_dim) for s, P in self.pims.items()),
            Fraction(0),
        )

    def all_covers(self, max_rounds: int = 6) -> dict[str, PIM]:
        """Covers of every simple module of G.

        Completeness of the catalog is certified by the identity
        sum_S dim(S) dim(P(S)) / dim End(S) = |G|; missing simples are
        searched for among composition factors of the covers, of modules
        induced from simple kH-modules and of tensor products of known
        simples.
        """
        order = self.G.order()
        chop(self.induced, self.catalog, seed=self.seed)
        for _ in range(max_rounds):
            # cutting a cover can register new simples, so repeat until
            # every catalog entry has one
            while len(self.pims) < len(self.catalog):
                for e in list(self.catalog):
                    self.cover(e.id)
            if self.weighted_total() == order:
                return self.pims
            before = len(self.catalog)
            for P in list(self.pims.values()):
                chop(P.module, self.catalog, seed=self.seed)
            if len(self.catalog) == before:
                # every simple is a quotient of some induced module V^G
                for e in sorted(self._h_simples(), key=lambda e: e.dim):
                    if len(self._table) * e.dim <= self.max_source_dim:
                        chop(self._induced_from(e.id), self.catalog, seed=self.seed)
                        if len(self.catalog) > before:
                            break
            if len(self.catalog) == before:
                ids = [e.id for e in self.catalog]
                pairs = sorted(((s, t) for i, s in enumerate(ids) for t in ids[i:]),
                               key=lambda st: self.catalog[st[0]].dim * self.catalog[st[1]].dim)
                for s, t in pairs:
                    T = tensor(self.catalog[s].module, self.catalog[t].module)
                    chop(T, self.catalog, seed=self.seed)
                    if len(self.catalog) > before:
                        break
        raise ResourceCapExceeded("could not find every simple module")

    def with_loewy(self, sid: str) -> PIM:
        pim = self.cover(sid)
        if pim.loewy is None:
            pim.loewy = loewy(pim.module, self.catalog, seed=self.seed)
        return pim


def projective_cover(sid: str, G: PermGroup, F: GF, H: PermGroup, U: PermGroup,
                     catalog: SimpleCatalog, seed: int = DEFAULT_SEED) -> PIM:
    return ProjectiveCovers(G, F, H, U, catalog, seed).cover(sid)


def cartan_matrix(covers: ProjectiveCovers, ids=None) -> CartanMatrix:
    """Cartan matrix from the Loewy layers of every cover."""
    cat = covers.catalog
    ids = list(ids) if ids is not None else [e.id for e in sorted(cat, key=lambda e: e.dim)]
    C = np.zeros((len(ids), len(ids)), dtype=np.int64)
    for i, s in enumerate(ids):
        comp = covers.with_loewy(s).loewy.composition()
        for t, m in comp.items():
            C[i, ids.index(t)] = m
    return CartanMatrix(ids, C)


def c_invariant(pim: PIM, G: PermGroup, p: int) -> Fraction:
    """dim P(S) / |G|_p."""
    return Fraction(pim.dim, p_part(G.order(), p))
