from __future__ import annotations

import itertools

import numpy as np
import pytest

from modrep.fflinalg import FFMatrix, FieldError, charpoly, charpoly_and_factor, field, kronecker, nullspace, rref, spin
from modrep.fflinalg import linalg, poly

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]


def naive_mul(p, minpoly, a, b):
    """Product of encoded elements by schoolbook polynomial arithmetic."""
    k = len(minpoly) - 1
    da = [(a // p**i) % p for i in range(k)]
    db = [(b // p**i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d]
        if c:
            for i, m in enumerate(minpoly):
                prod[d - k + i] = (prod[d - k + i] - c * m) % p
    return sum(prod[i] * p**i for i in range(k))


def naive_add(p, k, a, b):
    return sum((((a // p**i) + (b // p**i)) % p) * p**i for i in range(k))


def naive_matmul(F, A, B):
    p, k = F.p, F.deg
    mp = F.minpoly if k > 1 else (0, 1)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            acc = 0
            for t in range(A.shape[1]):
                acc = naive_add(p, k, acc, naive_mul(p, mp, int(A[i, t]), int(B[t, j])) if k > 1
                                else (int(A[i, t]) * int(B[t, j])) % p)
            out[i, j] = acc
    return out


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_exhaustive(p, k):
    F = field(p, k)
    q = F.q
    for a in range(q):
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    if k > 1:
        for a, b in itertools.product(range(q), repeat=2):
            assert F.mul(a, b) == naive_mul(p, F.minpoly, a, b)
            assert F.add(a, b) == naive_add(p, k, a, b)


def test_inverse_of_zero_raises():
    with pytest.raises((FieldError, ZeroDivisionError)):
        field(3).inv(0)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_kernels_match_naive_reference(p, k):
    F = field(p, k)
    rng = np.random.default_rng(11)
    A = F.random((50, 50), rng)
    B = F.random((50, 50), rng)
    assert np.array_equal(F.matmul(A, B).astype(np.int64), naive_matmul(F, A, B))


@pytest.mark.parametrize("p,k", FIELDS)
def test_rank_nullity_and_rref(p, k):
    F = field(p, k)
    rng = np.random.default_rng(p * 10 + k)
    for n, m in [(7, 5), (5, 9), (12, 12)]:
        A = F.random((n, m), rng)
        A[-1] = A[0]  # force a dependency
        N = linalg.nullspace(F, A)
        assert linalg.rank(F, A) + N.shape[0] == n
        if N.shape[0]:
            assert not F.matmul(N, A).any()
        R, piv = linalg.rref(F, A)
        R2, piv2 = linalg.rref(F, R)
        assert np.array_equal(R, R2) and piv == piv2


def test_ffmatrix_ops_and_equality():
    F = field(3)
    A = FFMatrix.from_rows(F, [[1, 2], [0, 1]])
    B = FFMatrix.from_rows(F, [[2, 0], [1, 1]])
    assert (A @ B).tolist() == [[1, 2], [1, 1]]
    assert (A + B).tolist() == [[0, 2], [1, 2]]
    assert A.inverse() @ A == FFMatrix.identity(F, 2)
    assert (A - A).is_zero()
    with pytest.raises(FieldError):
        A @ FFMatrix.identity(field(2), 2)


def test_rref_and_nullspace_wrappers():
    F = field(2)
    A = FFMatrix.from_rows(F, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    E = rref(A)
    assert E.rank == 2 and E.pivots == (0, 1)
    N = nullspace(A)
    assert N.tolist() == [[1, 1, 1]]


def test_spin_regular_c3_is_whole_space():
    F = field(3)
    g = FFMatrix.from_rows(F, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    E = spin(FFMatrix.from_rows(F, [[1, 0, 0]]), [g])
    assert E.rank == 3


def test_kronecker_small():
    F = field(3)
    I2, I3 = FFMatrix.identity(F, 2), FFMatrix.identity(F, 3)
    assert kronecker(I2, I3) == FFMatrix.identity(F, 6)
    A = FFMatrix.from_rows(F, [[1, 2], [0, 1]])
    B = FFMatrix.from_rows(F, [[2, 1], [1, 0]])
    K = kronecker(A, B).tolist()
    expect = [[(A.tolist()[i // 2][j // 2] * B.tolist()[i % 2][j % 2]) % 3 for j in range(4)] for i in range(4)]
    assert K == expect


def test_charpoly_and_factors():
    F = field(2)
    # companion matrix of x^3 + x + 1 (irreducible) direct sum the 1x1 block [1]
    C = FFMatrix.from_rows(F, [[0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 1]])
    cp = poly.to_tuple(charpoly(C))
    assert cp == poly.to_tuple(poly.mul(F, poly.poly(F, [1, 1, 0, 1]), poly.poly(F, [1, 1])))
    facs = charpoly_and_factor(C)
    prod = poly.poly(F, [1])
    for f, m in facs:
        assert poly.is_irreducible(F, f)
        for _ in range(m):
            prod = poly.mul(F, prod, f)
    assert poly.to_tuple(prod) == cp


def test_factor_over_gf9():
    F = field(3, 2)
    # x^2 + 1 is irreducible over GF(3) but splits over GF(9)
    facs = poly.factor(F, poly.poly(F, [1, 0, 1]))
    assert len(facs) == 2 and all(len(f) == 2 for f, _ in facs)
    assert poly.is_irreducible(field(3), poly.poly(field(3), [1, 0, 1]))
