"""Finite-dimensional matrix algebras: structure constants, the Jacobson
radical, and Fitting splittings of modules by endomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..fflinalg import GF, field as make_field, linalg, poly
from ..fflinalg.matrix import charpoly_array
from ..meataxe import DEFAULT_SEED, SimpleCatalog, generalized_kernel
from ..repmodule import Representation, sub_action


class AlgebraError(ValueError):
    """The given matrices do not span an algebra."""


class MatrixAlgebra:
    """The algebra spanned by square matrices ``basis`` (closed under products).

    Elements are handled by coordinates; ``probes`` are matrix positions
    whose entries determine the coordinates of any element of the span.
    """

    def __init__(self, F: GF, basis: list[np.ndarray], seed: int = DEFAULT_SEED, check: bool = True):
        self.F = F
        self.basis = [np.asarray(b, dtype=F.dtype) for b in basis]
        self.m = len(self.basis)
        self.n = self.basis[0].shape[0] if self.basis else 0
        rng = np.random.default_rng(seed)
        flat = np.array([b.reshape(-1) for b in self.basis], dtype=F.dtype).reshape(self.m, -1)
        self._probes = self._choose_probes(flat, rng)
        sub = flat[:, self._probes]
        self._probe_inv = linalg.inverse(F, sub) if self.m else sub
        self.structure = self._structure_constants()
        if check and self.m:
            self._check_closure(rng)

    def _choose_probes(self, flat: np.ndarray, rng) -> list[int]:
        F, m = self.F, self.m
        if m == 0:
            return []
        total = flat.shape[1]
        order = rng.permutation(total)
        chosen: list[int] = []
        start = 0
        while len(chosen) < m:
            if start >= total:
                raise AlgebraError("basis matrices are linearly dependent")
            block = order[start : start + 8 * m]
            start += len(block)
            cols = chosen + [int(c) for c in block]
            _, piv = linalg.rref(F, flat[:, cols])
            chosen = [cols[j] for j in piv]
        return sorted(chosen)

    def coords(self, Y: np.ndarray) -> np.ndarray:
        """Coordinates of an element of the span (no membership check)."""
        y = np.asarray(Y, dtype=self.F.dtype).reshape(-1)[self._probes]
        return self.F.matmul(y[None, :], self._probe_inv)[0]

    def element(self, c: np.ndarray) -> np.ndarray:
        F = self.F
        out = F.zeros((self.n, self.n))
        for ci, b in zip(c, self.basis):
            if ci:
                out = F.vadd(out, F.vmul(b, int(ci)))
        return out

    def _structure_constants(self) -> np.ndarray:
        """P[i, j] = coordinates of basis[i] @ basis[j]."""
        F, m, n = self.F, self.m, self.n
        P = np.zeros((m, m, m), dtype=F.dtype)
        if m == 0:
            return P
        rows = [divmod(pr, n) for pr in self._probes]
        vals = np.zeros((m, m, m), dtype=F.dtype)  # [i, j, probe]
        for t, (r, c) in enumerate(rows):
            A = np.array([b[r, :] for b in self.basis])  # m x n
            B = np.array([b[:, c] for b in self.basis]).T.copy()  # n x m
            vals[:, :, t] = F.matmul(A, B)
        flat = vals.reshape(m * m, m)
        P = F.matmul(flat, self._probe_inv).reshape(m, m, m)
        return P

    def _check_closure(self, rng, samples: int = 4) -> None:
        F = self.F
        for _ in range(samples):
            i, j = int(rng.integers(self.m)), int(rng.integers(self.m))
            Y = F.matmul(self.basis[i], self.basis[j])
            if not np.array_equal(self.element(self.structure[i, j]), Y):
                raise AlgebraError("span of the basis is not closed under multiplication")

    def mult(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Coordinates of the product of elements with coordinates x, y."""
        F, m = self.F, self.m
        # sum_ij x_i y_j P[i, j]
        xy = F.vmul(x[:, None], y[None, :]).reshape(1, m * m)
        return F.matmul(xy, self.structure.reshape(m * m, m))[0]

    def regular(self, x: np.ndarray) -> np.ndarray:
        """Matrix L with (coords z) L = coords of (element x) * z."""
        F, m = self.F, self.m
        return F.matmul(x[None, :], self.structure.reshape(m, m * m)).reshape(m, m)

    def identity_coords(self) -> np.ndarray:
        return self.coords(self.F.identity(self.n))

    def random_coords(self, rng) -> np.ndarray:
        return self.F.random(self.m, rng)


def _nilpotent_span(alg: MatrixAlgebra, vecs: np.ndarray) -> bool:
    """Whether the subspace spanned by ``vecs`` (coordinates) is a
    nilpotent subalgebra: its powers W, W^2, ... reach zero."""
    F = alg.F
    W = linalg.rref(F, vecs)[0] if vecs.shape[0] else vecs
    cur = W
    for _ in range(alg.m + 1):
        if cur.shape[0] == 0:
            return True
        prods = [alg.mult(a, b) for a in cur for b in W]
        nxt = linalg.rref(F, np.array(prods))[0]
        if nxt.shape[0] >= cur.shape[0] and cur is not W:
            return False
        cur = nxt
    return cur.shape[0] == 0


def local_split_radical(alg: MatrixAlgebra) -> np.ndarray | None:
    """If the algebra is local with residue field the ground field,
    return its radical (coordinate rows); otherwise None.

    Each basis element b is shifted by the scalar lambda with b - lambda
    nilpotent; the shifted span is then tested for nilpotency.
    """
    F, m = alg.F, alg.m
    one = alg.identity_coords()
    shifted = []
    for i in range(m):
        e = np.zeros(m, dtype=F.dtype)
        e[i] = 1
        L = alg.regular(e)
        facs = poly.factor(F, charpoly_array(F, L))
        if len(facs) != 1 or len(facs[0][0]) != 2:
            return None
        lam = F.neg(int(facs[0][0][0]))
        shifted.append(F.vsub(e, F.vmul(one, lam)))
    W, piv = linalg.rref(F, np.array(shifted))
    if W.shape[0] != m - 1:
        return None
    return W if _nilpotent_span(alg, W) else None


# -- the trace-form radical over the prime field ---------------------------

def _prime_lift_matrix(F: GF, A: np.ndarray) -> np.ndarray:
    """Write an m x m matrix over GF(p^k) as an mk x mk matrix over GF(p)
    acting on coordinate rows."""
    k = F.deg
    m = A.shape[0]
    out = np.zeros((m * k, m * k), dtype=np.int64)
    p = F.p
    basis = [p**s for s in range(k)]  # encodings of x^s
    for i in range(m):
        for j in range(m):
            a = int(A[i, j])
            if not a:
                continue
            for s, th in enumerate(basis):
                prod = F.mul(th, a)
                digits = [(prod // p**t) % p for t in range(k)]
                out[i * k + s, j * k : (j + 1) * k] = digits
    return out


def _trace_power_mod(X: np.ndarray, p: int, i: int) -> int:
    """(Tr(X^(p^i)) mod p^(i+1)) / p^i for an integer matrix X."""
    mod = p ** (i + 1)
    Y = X.astype(np.float64) % mod
    for _ in range(i):
        Z = Y
        for _ in range(p - 1):
            Z = np.mod(Z @ Y, mod)
        Y = Z
    t = int(np.trace(Y)) % mod
    if t % p**i:
        raise AssertionError("trace of a p^i-th power is not divisible by p^i")
    return (t // p**i) % p


def trace_form_radical(mats: list[np.ndarray], p: int) -> np.ndarray:
    """Jacobson radical of the F_p-algebra spanned by integer matrices
    ``mats`` (entries in 0..p-1), as coefficient rows over F_p.

    Iterated kernels of the forms (a, b) -> g_i(ab) with
    g_i(x) = Tr(x^(p^i)) / p^i mod p on successively smaller ideals.
    """
    Fp = make_field(p)
    d = len(mats)
    if d == 0:
        return np.zeros((0, 0), dtype=Fp.dtype)
    N = mats[0].shape[0]
    levels = 0
    while p ** (levels + 1) <= N:
        levels += 1
    basis = np.eye(d, dtype=np.int64)  # rows: coefficients of the current ideal
    stack = np.array(mats, dtype=np.int64)
    for i in range(levels + 1):
        if basis.shape[0] == 0:
            break
        elems = np.tensordot(basis, stack, axes=(1, 0)) % p
        G = np.zeros((basis.shape[0], d), dtype=np.int64)
        for a_idx, a in enumerate(elems):
            for b_idx in range(d):
                x = (a @ stack[b_idx]) % p
                G[a_idx, b_idx] = _trace_power_mod(x, p, i)
        ker = linalg.nullspace(Fp, G.astype(Fp.dtype))
        basis = (ker.astype(np.int64) @ basis) % p
    return linalg.rref(Fp, basis.astype(Fp.dtype))[0] if basis.shape[0] else basis.astype(Fp.dtype)


def algebra_radical(alg: MatrixAlgebra, method: str = "auto") -> np.ndarray:
    """Basis (coordinate rows) of the Jacobson radical of ``alg``.

    ``method`` is ``"trace"`` (trace forms over the prime field on the
    regular representation), ``"brute"`` (enumerate elements; only for
    q^dim <= 4096) or ``"auto"`` (the local shortcut, then trace forms).
    """
    F, m = alg.F, alg.m
    if m == 0:
        return np.zeros((0, 0), dtype=F.dtype)
    if method == "brute":
        return brute_force_radical(alg)
    if method == "auto":
        J = local_split_radical(alg)
        if J is not None:
            return J
    k = F.deg
    mats = []
    for i in range(m):
        e = np.zeros(m, dtype=F.dtype)
        e[i] = 1
        L = alg.regular(e)
        for s in range(k):
            mats.append(_prime_lift_matrix(F, F.vmul(L, F.p**s if k > 1 else 1)))
    Jp = trace_form_radical(mats, F.p)
    if Jp.shape[0] == 0:
        return np.zeros((0, m), dtype=F.dtype)
    # coefficient rows over F_p of the basis theta^s b_i -> coordinates over F
    rows = []
    for r in Jp:
        c = np.zeros(m, dtype=F.dtype)
        for i in range(m):
            acc = 0
            for s in range(k):
                coef = int(r[i * k + s])
                if coef:
                    acc = F.add(acc, F.mul(coef, F.p**s if k > 1 else 1))
            c[i] = acc
        rows.append(c)
    J, _ = linalg.rref(F, np.array(rows))
    return J


def _nilpotent_matrix(F: GF, L: np.ndarray) -> bool:
    X = L
    for _ in range(max(1, L.shape[0]).bit_length() + 1):
        X = F.matmul(X, X)
    return not X.any()


def brute_force_radical(alg: MatrixAlgebra, limit: int = 4096) -> np.ndarray:
    """J as the set of a with aA nilpotent, found by enumeration."""
    F, m = alg.F, alg.m
    if F.q**m > limit:
        raise AlgebraError(f"brute force radical needs q^dim <= {limit}")
    members = []
    for c in itertools.product(range(F.q), repeat=m):
        x = np.array(c, dtype=F.dtype)
        if not x.any():
            continue
        right = np.array([alg.mult(x, np.eye(m, dtype=F.dtype)[j]) for j in range(m)])
        right = linalg.rref(F, right)[0]
        if _nilpotent_span(alg, right) if right.shape[0] else True:
            members.append(x)
    if not members:
        return np.zeros((0, m), dtype=F.dtype)
    return linalg.rref(F, np.array(members))[0]


# -- splitting modules ---------------------------------------------------------

@dataclass
class Summand:
    """A direct summand with its indecomposability evidence.

    ``basis`` spans the summand inside the decomposed module (RREF rows).
    ``certified`` is True when End(M_i)/J is the ground field.
    """

    module: Representation
    basis: np.ndarray
    endo_dim: int
    radical_dim: int
    certified: bool

    @property
    def head_dim(self) -> int:
        return self.endo_dim - self.radical_dim


def fitting_split(F: GF, M: Representation, a: np.ndarray, f: np.ndarray):
    """Split M by the endomorphism a: generalized kernel and stable image of f(a)."""
    B = poly.matrix_eval(F, f, a)
    K = generalized_kernel(F, B)
    P = B
    for _ in range(M.dim.bit_length() + 1):
        P = F.matmul(P, P)
    I, ipiv = linalg.rref(F, P)
    return (K, linalg.rref(F, K)[1]), (I, ipiv)


def endomorphism_algebra(M: Representation, catalog: SimpleCatalog | None, seed: int) -> MatrixAlgebra:
    from .hom import hom_space

    E = hom_space(M, M, catalog, seed=seed).arrays
    return MatrixAlgebra(M.field, E, seed=seed)


def indecomposable_summands(M: Representation, catalog: SimpleCatalog | None = None,
                            seed: int = DEFAULT_SEED, tries: int = 40) -> list[Summand]:
    """Decompose M into summands certified indecomposable by dim End/J = 1."""
    F = M.field
    rng = np.random.default_rng(seed)
    out: list[Summand] = []
    stack = [(M, F.identity(M.dim))]
    while stack:
        X, basis = stack.pop()
        alg = endomorphism_algebra(X, catalog, seed)
        J = local_split_radical(alg)
        if J is not None:
            out.append(Summand(X, basis, alg.m, J.shape[0], True))
            continue
        split = None
        for _ in range(tries):
            c = alg.random_coords(rng)
            facs = poly.factor(F, charpoly_array(F, alg.regular(c)))
            if len(facs) > 1:
                split = (alg.element(c), facs[0][0])
                break
        if split is None:
            # no idempotent found: decide locality with the full radical
            J = algebra_radical(alg, "trace")
            certified = alg.m - J.shape[0] == 1
            # a local ring with E/J a proper extension field is
            # indecomposable, but not absolutely so
            out.append(Summand(X, basis, alg.m, J.shape[0], certified))
            continue
        (K, kp), (I, ip) = fitting_split(F, X, *split)
        for ech, piv in ((I, ip), (K, kp)):
            sub = sub_action(X, ech, piv)
            stack.append((sub, F.matmul(ech, basis)))
    out.sort(key=lambda s: (s.module.dim, s.basis.tobytes()))
    return out


def is_indecomposable(M: Representation, catalog: SimpleCatalog | None = None,
                      seed: int = DEFAULT_SEED) -> bool:
    return len(indecomposable_summands(M, catalog, seed)) == 1
