from __future__ import annotations

import itertools

import numpy as np
import pytest

from modrep.fflinalg import FFMatrix, field
from modrep.permgroup import PermGroup, mul
from modrep.repmodule import (
    ModuleError,
    Representation,
    Submodule,
    cofixed_dim,
    direct_sum,
    dual,
    fixed_dim,
    fixed_space,
    induce,
    is_projective,
    perm_matrix,
    perm_rep,
    restrict,
    tensor,
    trivial,
)

S3 = PermGroup.from_images([[2, 3, 1], [2, 1, 3]])
A3 = PermGroup.from_images([[2, 3, 1]])
S2 = PermGroup.from_images([[2, 1, 3]])
A4 = PermGroup.from_images([[2, 3, 1, 4], [2, 1, 4, 3]])
V4 = PermGroup.from_images([[2, 1, 4, 3], [3, 4, 1, 2]])


def brute_fixed_dim(M: Representation, H: PermGroup) -> int:
    """Count fixed vectors by enumeration; the dimension is log_q of the count."""
    F = M.field
    mats = [M.element(h) for h in H.generators]
    count = 0
    for v in itertools.product(range(F.q), repeat=M.dim):
        x = np.array([v], dtype=F.dtype)
        if all(np.array_equal(F.matmul(x, a), x) for a in mats):
            count += 1
    d = round(np.log(count) / np.log(F.q))
    assert F.q**d == count
    return d


def test_element_is_a_homomorphism():
    F = field(3)
    M = perm_rep(S3, F)
    elems = S3.elements()
    for g, h in itertools.product(elems, repeat=2):
        assert np.array_equal(M.element(mul(g, h)), F.matmul(M.element(g), M.element(h)))
        assert np.array_equal(M.element(g), perm_matrix(F, g))


def test_validation():
    F = field(2)
    with pytest.raises(ModuleError):
        Representation(S3, F, (FFMatrix.identity(F, 2),))
    with pytest.raises(ModuleError):
        Representation(A3, F, (FFMatrix.from_rows(F, [[1, 1], [1, 1]]),))
    with pytest.raises(ModuleError):
        Representation(PermGroup([], degree=3), F, ())


def test_induce_dimension_and_frobenius():
    F = field(3)
    M = induce(trivial(S2, F), S3)
    assert M.dim == 3
    # Frobenius reciprocity: Hom_G(Ind k, k) = Hom_H(k, k)
    assert fixed_dim(M, S3) == 1 and cofixed_dim(M, S3) == 1
    assert brute_fixed_dim(M, S3) == 1
    R = restrict(M, S2)
    assert fixed_dim(R, S2) == 2 == brute_fixed_dim(R, S2)
    for g, h in itertools.product(S3.elements(), repeat=2):
        assert np.array_equal(M.element(mul(g, h)), F.matmul(M.element(g), M.element(h)))


def test_regular_module_is_projective():
    F = field(2)
    triv = PermGroup([], degree=4)
    reg = induce(trivial(triv, F), A4)
    assert reg.dim == 12
    assert is_projective(reg, V4)
    assert not is_projective(trivial(A4, F), V4)
    # induced from the 2'-subgroup C3: projective of dim 4
    C3 = PermGroup.from_images([[2, 3, 1, 4]])
    assert is_projective(induce(trivial(C3, F), A4), V4)


def test_dual_and_tensor():
    F = field(3)
    M = perm_rep(S3, F)
    D = dual(dual(M))
    assert all(np.array_equal(a, b) for a, b in zip(D.mats, M.mats))
    T = tensor(M, trivial(S3, F))
    assert all(np.array_equal(a, b) for a, b in zip(T.mats, M.mats))
    MM = tensor(M, M)
    assert MM.dim == 9
    # permutation module on ordered pairs: orbits are the diagonal and the rest
    assert fixed_dim(MM, S3) == 2 == brute_fixed_dim(restrict(MM, S3), S3)
    assert direct_sum(M, M).dim == 6


@pytest.mark.parametrize("q", [2, 3, 4])
def test_fixed_space_matches_enumeration(q):
    F = field(2, 2) if q == 4 else field(q)
    M = induce(trivial(A3, F), S3) if q != 4 else perm_rep(A4, F)
    G = M.group
    for H in ([S2, A3, S3] if G is S3 else [V4, A4]):
        assert fixed_dim(M, H) == brute_fixed_dim(M, H)
        fs = fixed_space(M, H)
        for h in H.generators:
            assert np.array_equal(F.matmul(fs, M.element(h)), fs)


def test_submodules():
    F = field(3)
    M = perm_rep(S3, F)
    ones = np.ones((1, 3), dtype=F.dtype)
    N = Submodule.span(M, ones)
    assert N.dim == 1 and N.contains(ones)
    assert N.quotient().dim == 2
    with pytest.raises(ModuleError):
        Submodule.from_space(M, np.array([[1, 0, 0]], dtype=F.dtype))
    # augmentation submodule (sum zero) contains the all-ones vector in char 3
    aug = Submodule.span(M, np.array([[1, 2, 0]], dtype=F.dtype))
    assert aug.dim == 2 and aug.contains(ones)
