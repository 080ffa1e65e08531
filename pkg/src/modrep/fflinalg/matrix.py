"""Immutable matrices over GF(q) and the operations built on them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg, poly
from .field import GF, FieldError


@dataclass(frozen=True, eq=False)
class FFMatrix:
    """A dense matrix over a finite field.

    Entries are stored one per byte (two bytes for q > 256), reduced, so
    equality of matrices over the same field is equality of their bytes.
    """

    field: GF
    data: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        arr = np.array(self.data, dtype=self.field.dtype, copy=True, ndmin=2)
        if arr.ndim != 2:
            raise ValueError("FFMatrix data must be 2-dimensional")
        if arr.size and int(arr.max()) >= self.field.q:
            raise FieldError("matrix entry is not a reduced field element")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, F: GF, rows) -> "FFMatrix":
        return cls(F, np.asarray(rows, dtype=np.int64) % F.q if F.is_prime else np.asarray(rows))

    @classmethod
    def identity(cls, F: GF, n: int) -> "FFMatrix":
        return cls(F, F.identity(n))

    @classmethod
    def zeros(cls, F: GF, nrows: int, ncols: int) -> "FFMatrix":
        return cls(F, F.zeros((nrows, ncols)))

    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    @property
    def ncols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def _check(self, other: "FFMatrix"):
        if not isinstance(other, FFMatrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")
        return None

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return FFMatrix(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return FFMatrix(self.field, self.field.vadd(self.data, other.data))

    def __sub__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return FFMatrix(self.field, self.field.vsub(self.data, other.data))

    def __neg__(self) -> "FFMatrix":
        return FFMatrix(self.field, self.field.vneg(self.data))

    def scale(self, c: int) -> "FFMatrix":
        return FFMatrix(self.field, self.field.vmul(self.data, c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.data.tobytes() == other.data.tobytes()
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"FFMatrix({self.field}, {self.nrows}x{self.ncols})"

    @property
    def T(self) -> "FFMatrix":
        return FFMatrix(self.field, self.data.T)

    def tolist(self) -> list[list[int]]:
        return self.data.astype(int).tolist()

    def is_zero(self) -> bool:
        return not self.data.any()

    def rank(self) -> int:
        return linalg.rank(self.field, self.data)

    def inverse(self) -> "FFMatrix":
        return FFMatrix(self.field, linalg.inverse(self.field, self.data))


@dataclass(frozen=True)
class EchelonForm:
    """A matrix in reduced row echelon form with its pivot columns."""

    matrix: FFMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def fe_arith(F: GF, a: int, b: int, op: str) -> int:
    """Field arithmetic on encoded elements; ``inv`` inverts ``b``."""
    if op == "add":
        return F.add(a, b)
    if op == "sub":
        return F.sub(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "inv":
        return F.inv(b)
    raise ValueError(f"unknown field operation {op!r}")


def rref(A: FFMatrix) -> EchelonForm:
    R, piv = linalg.rref(A.field, A.data)
    return EchelonForm(FFMatrix(A.field, R.reshape(len(piv), A.ncols)), tuple(piv))


def nullspace(A: FFMatrix) -> FFMatrix:
    """Rows spanning {v : v A = 0}."""
    N = linalg.nullspace(A.field, A.data)
    return FFMatrix(A.field, N.reshape(-1, A.nrows))


def spin(seeds: FFMatrix, action: list[FFMatrix]) -> EchelonForm:
    for g in action:
        if g.field != seeds.field:
            raise FieldError("field mismatch in spin")
        if g.shape != (seeds.ncols, seeds.ncols):
            raise ValueError(f"action matrix {g.shape} incompatible with {seeds.ncols}-vectors")
    E, piv = linalg.spin(seeds.field, seeds.data, [g.data for g in action])
    return EchelonForm(FFMatrix(seeds.field, E.reshape(len(piv), seeds.ncols)), tuple(piv))


def kronecker_arrays(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    m, n = A.shape
    r, s = B.shape
    prod = F.vmul(A[:, None, :, None], B[None, :, None, :])
    return prod.reshape(m * r, n * s)


def kronecker(A: FFMatrix, B: FFMatrix) -> FFMatrix:
    if A.field != B.field:
        raise FieldError("kronecker product of matrices over different fields")
    return FFMatrix(A.field, kronecker_arrays(A.field, A.data, B.data))


def charpoly_array(F: GF, A: np.ndarray) -> np.ndarray:
    """Characteristic polynomial via successive cyclic subspaces.

    Each cyclic block w, wA, wA^2, ... is reduced modulo everything found
    so far; the dependency closing a block is the characteristic
    polynomial of A on that block's quotient, and their product is the
    characteristic polynomial of A.
    """
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("charpoly of a non-square matrix")
    result = poly.poly(F, [1])
    ech = np.zeros((n, n), dtype=F.dtype)  # RREF rows, by insertion
    coef = np.zeros((n, n + 1), dtype=F.dtype)  # polynomial label per row
    pivots: list[int] = []
    while len(pivots) < n:
        taken = set(pivots)
        start = next(j for j in range(n) if j not in taken)
        x = F.zeros(n)
        x[start] = 1
        c = F.zeros(n + 1)
        c[0] = 1
        while True:
            r = len(pivots)
            if r:
                k = x[pivots]
                if k.any():
                    x = F.vsub(x, F.matmul(k[None, :], ech[:r])[0])
                    c = F.vsub(c, F.matmul(k[None, :], coef[:r])[0])
            nz = np.flatnonzero(x)
            if nz.size == 0:
                result = poly.mul(F, result, poly.trim(c))
                coef[:] = 0  # labels are taken modulo the invariant span so far
                break
            col = int(nz[0])
            inv = F.inv(int(x[col]))
            x = F.vmul(x, inv)
            c = F.vmul(c, inv)
            # keep earlier rows reduced in the new pivot column
            if r:
                f = ech[:r, col].copy()
                if f.any():
                    ech[:r] = F.vsub(ech[:r], F.vmul(f[:, None], x[None, :]))
                    coef[:r] = F.vsub(coef[:r], F.vmul(f[:, None], c[None, :]))
            ech[r] = x
            coef[r] = c
            pivots.append(col)
            x = F.matmul(x[None, :], A)[0]
            c = np.concatenate([F.zeros(1), c[:-1]])
    return poly.monic(F, result)


def charpoly(A: FFMatrix) -> np.ndarray:
    return charpoly_array(A.field, A.data)


def charpoly_and_factor(A: FFMatrix, seed: int = 0) -> list[tuple[np.ndarray, int]]:
    """Irreducible factors of the characteristic polynomial with multiplicities."""
    if A.nrows != A.ncols:
        raise ValueError("charpoly of a non-square matrix")
    if A.nrows == 0:
        return []
    return poly.factor(A.field, charpoly(A), seed=seed)
