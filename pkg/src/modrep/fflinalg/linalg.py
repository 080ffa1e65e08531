"""Dense linear algebra kernels on raw arrays.

Vectors are rows.  Every routine takes the field first and plain
``numpy`` arrays holding encoded field elements.
"""

from __future__ import annotations

import numpy as np

from .field import GF


def _pack_gf2(a: np.ndarray) -> np.ndarray:
    n, m = a.shape
    words = max(1, (m + 63) // 64)
    padded = np.zeros((n, words * 64), dtype=np.uint8)
    padded[:, :m] = a
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def _unpack_gf2(packed: np.ndarray, m: int) -> np.ndarray:
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :m].copy()


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    n, m = a.shape
    if n == 0 or m == 0:
        return np.zeros((0, m), dtype=np.uint8), []
    w = _pack_gf2(a)
    pivots: list[int] = []
    r = 0
    one = np.uint64(1)
    for c in range(m):
        if r == n:
            break
        word, bit = c >> 6, np.uint64(c & 63)
        col = (w[r:, word] >> bit) & one
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            w[[r, piv]] = w[[piv, r]]
        hit = np.flatnonzero((w[:, word] >> bit) & one)
        hit = hit[hit != r]
        if hit.size:
            w[hit] ^= w[r]
        pivots.append(c)
        r += 1
    return _unpack_gf2(w[:r], m), pivots


def _rref_prime(a: np.ndarray, p: int, dtype) -> tuple[np.ndarray, list[int]]:
    n, m = a.shape
    A = a.astype(np.int32)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = A[r] * pow(lead, p - 2, p) % p
        f = A[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[hit] = (A[hit] - f[hit, None] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r].astype(dtype), pivots


def _rref_ext(F: GF, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    n, m = a.shape
    A = a.copy()
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.vmul(A[r], F.inv(lead))
        f = A[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[hit] = F.vsub(A[hit], F.vmul(f[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(F: GF, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = np.asarray(a, dtype=F.dtype)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if a.shape[0] == 0:
        return a.copy(), []
    if F.is_prime and F.p == 2:
        return _rref_gf2(a)
    if F.is_prime:
        return _rref_prime(a, F.p, F.dtype)
    return _rref_ext(F, a)


def rank(F: GF, a: np.ndarray) -> int:
    return len(rref(F, a)[1])


def nullspace(F: GF, a: np.ndarray) -> np.ndarray:
    """Basis (in RREF) of the left nullspace {v : v a = 0}."""
    n, m = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=F.dtype)
    R, piv = rref(F, a.T)
    free = [j for j in range(n) if j not in set(piv)]
    out = np.zeros((len(free), n), dtype=F.dtype)
    if not free:
        return out
    free_idx = np.array(free)
    out[np.arange(len(free)), free_idx] = 1
    if piv:
        # v_piv[i] = -R[i, f]
        out[:, piv] = F.vneg(R[:, free_idx].T)
    return rref(F, out)[0]


def inverse(F: GF, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.hstack([a, F.identity(n)]))
    if piv != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return R[:n, n:].copy()


def reduce_rows(F: GF, vecs: np.ndarray, ech: np.ndarray, pivots) -> np.ndarray:
    """Reduce row vectors modulo the row space of an RREF matrix."""
    if len(pivots) == 0 or vecs.shape[0] == 0:
        return vecs.copy()
    coeff = vecs[:, pivots]
    return F.vsub(vecs, F.matmul(coeff, ech))


def in_rowspace(F: GF, vecs: np.ndarray, ech: np.ndarray, pivots) -> bool:
    return not reduce_rows(F, vecs, ech, pivots).any()


class EchelonSpace:
    """Row space kept in reduced row echelon form, grown incrementally."""

    def __init__(self, F: GF, ncols: int, rows: np.ndarray | None = None):
        self.F = F
        self.ncols = ncols
        self.ech = np.zeros((0, ncols), dtype=F.dtype)
        self.pivots: list[int] = []
        if rows is not None and len(rows):
            self.add(rows)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vecs: np.ndarray) -> np.ndarray:
        return reduce_rows(self.F, vecs, self.ech, self.pivots)

    def contains(self, vecs: np.ndarray) -> bool:
        return not self.reduce(np.atleast_2d(vecs)).any()

    def add(self, vecs: np.ndarray) -> np.ndarray:
        """Add vectors; return the new RREF rows (reduced against the old space)."""
        F = self.F
        red = self.reduce(np.atleast_2d(vecs))
        new, npiv = rref(F, red)
        if not npiv:
            return new
        if self.pivots:
            self.ech = F.vsub(self.ech, F.matmul(self.ech[:, npiv], new))
        rows = np.vstack([self.ech, new])
        piv = self.pivots + npiv
        order = np.argsort(piv, kind="stable")
        self.ech = rows[order]
        self.pivots = [piv[i] for i in order]
        return new


def spin(F: GF, seeds: np.ndarray, action) -> tuple[np.ndarray, list[int]]:
    """Smallest row space containing ``seeds`` closed under right
    multiplication by each matrix in ``action``; returned in RREF."""
    seeds = np.atleast_2d(np.asarray(seeds, dtype=F.dtype))
    n = seeds.shape[1]
    for g in action:
        if g.shape != (n, n):
            raise ValueError(f"action matrix of shape {g.shape} on {n}-dim vectors")
    space = EchelonSpace(F, n)
    frontier = space.add(seeds)
    while frontier.shape[0]:
        images = np.vstack([F.matmul(frontier, g) for g in action]) if action else frontier[:0]
        frontier = space.add(images)
        if space.dim == n:
            break
    return space.ech, space.pivots
