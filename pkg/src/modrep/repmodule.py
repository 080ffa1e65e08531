"""kG-modules given by one matrix per group generator.

Vectors are rows and the group acts on the right, so a representation
assigns to the i-th generator ``g_i`` of the group an invertible matrix
``A_i`` and the vector ``v`` goes to ``v A_i``.  Elements of the group
are evaluated from words in the generators (signed 1-based letters, as
produced by :mod:`modrep.permgroup`).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .fflinalg import GF, FFMatrix, linalg
from .fflinalg.matrix import kronecker_arrays
from .permgroup import CosetTable, GroupError, PermGroup, Word


class ModuleError(ValueError):
    """Inconsistent module data."""


@dataclass(frozen=True, eq=False)
class Representation:
    """A right kG-module.

    Parameters
    ----------
    group : PermGroup
        The acting group; ``gens[i]`` represents ``group.generators[i]``.
    field : GF
    gens : tuple of FFMatrix
        Square invertible matrices of a common size.
    label : str
        Free-form provenance, e.g. ``"perm"`` or ``"induce(k_H)"``.
    """

    group: PermGroup
    field: GF
    gens: tuple
    label: str = ""
    check: bool = dc_field(default=True, repr=False)
    size: int | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        gens = tuple(g if isinstance(g, FFMatrix) else FFMatrix(self.field, g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if len(gens) != len(self.group.generators):
            raise ModuleError(
                f"{len(gens)} matrices for a group with {len(self.group.generators)} generators"
            )
        dims = {g.shape for g in gens}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise ModuleError("generator matrices must be square of one size")
        if gens:
            object.__setattr__(self, "size", gens[0].nrows)
        elif self.size is None:
            raise ModuleError("dimension required for a module of a trivial group")
        if any(g.field != self.field for g in gens):
            raise ModuleError("generator matrix over the wrong field")
        if self.check:
            for g in gens:
                if g.nrows and linalg.rank(self.field, g.data) != g.nrows:
                    raise ModuleError("generator matrix is not invertible")

    @property
    def dim(self) -> int:
        return self.size

    @cached_property
    def scratch(self) -> dict:
        """Per-module cache for derived data (word products, kernels)."""
        return {}

    @cached_property
    def mats(self) -> list[np.ndarray]:
        """Raw generator arrays."""
        return [g.data for g in self.gens]

    @cached_property
    def inverse_mats(self) -> list[np.ndarray]:
        return [linalg.inverse(self.field, a) for a in self.mats]

    def letter(self, x: int) -> np.ndarray:
        return self.mats[x - 1] if x > 0 else self.inverse_mats[-x - 1]

    def word(self, w: Word) -> np.ndarray:
        """Matrix of the group element given by the word w."""
        F = self.field
        out = F.identity(self.dim)
        for x in w:
            out = F.matmul(out, self.letter(x))
        return out

    def element(self, g) -> np.ndarray:
        """Matrix of the permutation g of the group."""
        return self.word(self.group.word(tuple(g)))

    def relabel(self, label: str) -> "Representation":
        return Representation(self.group, self.field, self.gens, label, check=False, size=self.size)

    def check_relators(self, relators: Iterable[Word]) -> None:
        eye = self.field.identity(self.dim)
        for w in relators:
            if not np.array_equal(self.word(w), eye):
                raise ModuleError(f"relator {list(w)} does not evaluate to the identity")

    def __repr__(self):
        return f"<Representation {self.label or '?'} dim={self.dim} over {self.field}>"


def from_arrays(group: PermGroup, F: GF, arrays: Sequence[np.ndarray], label: str = "",
                dim: int | None = None) -> Representation:
    """Build a module from trusted raw arrays (no invertibility check).

    ``dim`` is only needed when the group has no generators.
    """
    return Representation(group, F, tuple(FFMatrix(F, a) for a in arrays), label, check=False, size=dim)


def trivial(group: PermGroup, F: GF) -> Representation:
    return from_arrays(group, F, [F.identity(1) for _ in group.generators], "k", dim=1)


def perm_matrix(F: GF, g: Sequence[int]) -> np.ndarray:
    n = len(g)
    out = F.zeros((n, n))
    out[np.arange(n), np.asarray(g)] = 1
    return out


def perm_rep(G: PermGroup, F: GF) -> Representation:
    """The natural permutation module: basis vector e_i goes to e_{i^g}."""
    return from_arrays(G, F, [perm_matrix(F, g) for g in G.generators], "perm", dim=G.degree)


def induce(M: Representation, G: PermGroup, table: CosetTable | None = None) -> Representation:
    """Induce M from its group H up to G.

    The basis is ``m (x) r_i`` over the right coset representatives r_i
    of ``table`` (identity coset first); ``(m (x) r_i) g = m h (x) r_t``
    with ``r_i g = h r_t``.
    """
    H = M.group
    if table is None:
        table = CosetTable(G, H)
    elif table.H is not H and table.H.generators != H.generators:
        raise GroupError("coset table is for a different subgroup")
    F, d, m = M.field, M.dim, len(table)
    mats = []
    cache: dict = {}
    for j in range(len(G.generators)):
        out = F.zeros((m * d, m * d))
        for i in range(m):
            t = table.action[j][i]
            h = table.cocycle[j][i]
            if h not in cache:
                cache[h] = M.element(h)
            out[i * d : (i + 1) * d, t * d : (t + 1) * d] = cache[h]
        mats.append(out)
    return from_arrays(G, F, mats, f"induce({M.label})", dim=m * d)


def restrict(M: Representation, H: PermGroup) -> Representation:
    """Restrict M to the subgroup H, evaluating words for H's generators."""
    G = M.group
    mats = []
    for h in H.generators:
        if not G.contains(h):
            raise GroupError("subgroup generator is not in the group")
        mats.append(M.element(h))
    return from_arrays(H, M.field, mats, f"{M.label}|", dim=M.dim)


def dual(M: Representation) -> Representation:
    """Dual module: generators act by inverse transposes."""
    return from_arrays(M.group, M.field, [a.T.copy() for a in M.inverse_mats], f"{M.label}*", dim=M.dim)


def transpose_module(M: Representation) -> Representation:
    """The module with generator matrices A_i^T (a module for the opposite
    order of multiplication; used by the Norton test)."""
    return from_arrays(M.group, M.field, [a.T.copy() for a in M.mats], f"{M.label}^T", dim=M.dim)


def tensor(M: Representation, N: Representation) -> Representation:
    if M.group is not N.group and M.group.generators != N.group.generators:
        raise ModuleError("tensor product of modules for different groups")
    if M.field != N.field:
        raise ModuleError("tensor product of modules over different fields")
    F = M.field
    mats = [kronecker_arrays(F, a, b) for a, b in zip(M.mats, N.mats)]
    return from_arrays(M.group, F, mats, f"{M.label}x{N.label}", dim=M.dim * N.dim)


def direct_sum(*mods: Representation) -> Representation:
    F = mods[0].field
    n = sum(m.dim for m in mods)
    mats = []
    for j in range(len(mods[0].gens)):
        out = F.zeros((n, n))
        o = 0
        for m in mods:
            out[o : o + m.dim, o : o + m.dim] = m.mats[j]
            o += m.dim
        mats.append(out)
    return from_arrays(mods[0].group, F, mats, "+".join(m.label for m in mods), dim=n)


def inflate(M: Representation, G: PermGroup) -> Representation:
    """View a module for a quotient of G (same generator indexing) as a G-module."""
    if len(M.gens) != len(G.generators):
        raise ModuleError("quotient module has a different number of generators")
    return from_arrays(G, M.field, M.mats, f"infl({M.label})", dim=M.dim)


# -- subspaces, submodules, quotients -----------------------------------

def is_invariant(M: Representation, ech: np.ndarray, pivots) -> bool:
    F = M.field
    return all(linalg.in_rowspace(F, F.matmul(ech, a), ech, pivots) for a in M.mats)


@dataclass(frozen=True, eq=False)
class Submodule:
    """An invariant subspace of ``parent``, in reduced row echelon form."""

    parent: Representation
    basis: np.ndarray
    pivots: tuple

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=self.parent.field.dtype).reshape(-1, self.parent.dim)
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "pivots", tuple(int(x) for x in self.pivots))

    @classmethod
    def span(cls, M: Representation, vecs: np.ndarray) -> "Submodule":
        """The submodule generated by ``vecs``."""
        ech, piv = linalg.spin(M.field, np.asarray(vecs).reshape(-1, M.dim), M.mats)
        return cls(M, ech, piv)

    @classmethod
    def from_space(cls, M: Representation, vecs: np.ndarray, check: bool = True) -> "Submodule":
        ech, piv = linalg.rref(M.field, np.asarray(vecs, dtype=M.field.dtype).reshape(-1, M.dim))
        if check and not is_invariant(M, ech, piv):
            raise ModuleError("subspace is not invariant")
        return cls(M, ech, piv)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, vecs) -> bool:
        return linalg.in_rowspace(self.parent.field, np.atleast_2d(vecs), self.basis, list(self.pivots))

    def module(self) -> Representation:
        """The submodule as a module in the basis ``self.basis``."""
        return sub_action(self.parent, self.basis, self.pivots)

    def quotient(self) -> Representation:
        return quotient_action(self.parent, self.basis, self.pivots)


def sub_action(M: Representation, ech: np.ndarray, pivots) -> Representation:
    """Action on an invariant subspace given in RREF."""
    F = M.field
    piv = list(pivots)
    mats = [F.matmul(ech, a)[:, piv] for a in M.mats]
    return from_arrays(M.group, F, mats, f"sub({M.label})", dim=len(piv))


def complement_columns(n: int, pivots) -> list[int]:
    taken = set(pivots)
    return [j for j in range(n) if j not in taken]


def quotient_action(M: Representation, ech: np.ndarray, pivots) -> Representation:
    """Action on M / span(ech); the quotient basis is the images of the
    unit vectors at the non-pivot columns."""
    F = M.field
    piv = list(pivots)
    free = complement_columns(M.dim, piv)
    mats = []
    for a in M.mats:
        rows = a[free]
        rows = linalg.reduce_rows(F, rows, ech, piv)
        mats.append(rows[:, free])
    return from_arrays(M.group, F, mats, f"quot({M.label})", dim=len(free))


def quotient_project(F: GF, vecs: np.ndarray, ech: np.ndarray, pivots, n: int) -> np.ndarray:
    """Coordinates in M/span(ech) (see :func:`quotient_action`)."""
    red = linalg.reduce_rows(F, np.atleast_2d(vecs), ech, list(pivots))
    return red[:, complement_columns(n, pivots)]


def quotient_lift(F: GF, coords: np.ndarray, pivots, n: int) -> np.ndarray:
    """Lift quotient coordinates to vectors of M (zero on pivot columns)."""
    coords = np.atleast_2d(coords)
    out = F.zeros((coords.shape[0], n))
    out[:, complement_columns(n, pivots)] = coords
    return out


def annihilator(F: GF, vecs: np.ndarray, n: int) -> tuple[np.ndarray, list[int]]:
    """RREF basis of {v : v w^T = 0 for all rows w of vecs}."""
    vecs = np.asarray(vecs, dtype=F.dtype).reshape(-1, n)
    if vecs.shape[0] == 0:
        return F.identity(n), list(range(n))
    ns = linalg.nullspace(F, vecs.T.copy())
    return linalg.rref(F, ns) if ns.shape[0] else (ns, [])


# -- fixed points -------------------------------------------------------

def _subgroup_mats(M: Representation, H) -> list[np.ndarray]:
    if isinstance(H, PermGroup):
        for h in H.generators:
            if not M.group.contains(h):
                raise GroupError("subgroup generator is not in the group")
        return [M.element(h) for h in H.generators]
    # a list of words in the generators of M.group
    return [M.word(w) for w in H]


def fixed_space(M: Representation, H) -> np.ndarray:
    """RREF basis of the vectors fixed by the subgroup H (a PermGroup, or
    a list of words in the group's generators)."""
    F = M.field
    mats = _subgroup_mats(M, H)
    if not mats:
        return F.identity(M.dim)
    eye = F.identity(M.dim)
    stacked = np.hstack([F.vsub(a, eye) for a in mats])
    return linalg.nullspace(F, stacked)


def fixed_dim(M: Representation, H) -> int:
    return fixed_space(M, H).shape[0]


def cofixed_dim(M: Representation, H) -> int:
    """dim Hom_H(M, k): the fixed-point dimension of the dual."""
    return fixed_dim(dual(M), H)


def is_projective(M: Representation, U) -> bool:
    """Projectivity test against a Sylow p-subgroup U: M restricted to U
    is free iff dim M^U * |U| = dim M."""
    order = U.order() if isinstance(U, PermGroup) else None
    if order is None:
        raise ModuleError("projectivity test needs the Sylow subgroup as a PermGroup")
    if M.dim % order:
        return False
    return fixed_dim(M, U) * order == M.dim
