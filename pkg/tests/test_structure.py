from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from modrep.fflinalg import field, linalg
from modrep.meataxe import SimpleCatalog, chop
from modrep.permgroup import PermGroup
from modrep.repmodule import Submodule, direct_sum, dual, induce, perm_rep, trivial
from modrep.structure import (
    MatrixAlgebra,
    ProjectiveCovers,
    algebra_radical,
    block_partition,
    brute_force_radical,
    c_invariant,
    cartan_matrix,
    endomorphism_algebra,
    head_multiplicities,
    heart,
    hom_space,
    indecomposable_summands,
    loewy,
    omega,
    socle,
    try_split_by_heads,
)

from conftest import covers, group_data

S3 = PermGroup.from_images([[2, 3, 1], [2, 1, 3]])
A3 = PermGroup.from_images([[2, 3, 1]])
S2 = PermGroup.from_images([[2, 1, 3]])


def upper_triangular(F):
    e11, e12, e22 = (np.zeros((2, 2), dtype=F.dtype) for _ in range(3))
    e11[0, 0] = e12[0, 1] = e22[1, 1] = 1
    return MatrixAlgebra(F, [e11, e12, e22])


@pytest.mark.parametrize("F", [field(2), field(3), field(2, 2)])
def test_radical_of_upper_triangular(F):
    alg = upper_triangular(F)
    for method in ("trace", "brute", "auto"):
        J = algebra_radical(alg, method)
        assert J.shape[0] == 1 and J[0].tolist() == [0, 1, 0]


def test_radical_methods_agree_on_endomorphism_rings():
    F = field(3)
    for M in (perm_rep(S3, F), induce(trivial(A3, F), S3), perm_rep(A3, F),
              direct_sum(perm_rep(S3, F), trivial(S3, F))):
        alg = endomorphism_algebra(M, None, 1)
        if F.q**alg.m > 4096:
            continue
        Jt = algebra_radical(alg, "trace")
        Jb = brute_force_radical(alg)
        assert np.array_equal(Jt, Jb)


def test_hom_dimensions_by_double_cosets():
    # dim End(Ind_H^G k) = number of (H, H) double cosets, in any characteristic
    _, G, H, _, F = group_data("a5")
    M = induce(trivial(H, F), G)
    assert hom_space(M, M).dim == 4  # (12 + 4*2)/5 by Burnside
    for p in (2, 3):
        P = perm_rep(S3, field(p))
        assert hom_space(P, P).dim == 2


def test_s3_char3_structure():
    pc = covers("s3")
    C = cartan_matrix(pc)
    assert C.as_lists() == [[2, 1], [1, 2]] and C.determinant() == 3
    B = block_partition(C, pc.catalog.trivial_id)
    assert B.blocks == [["1a", "1b"]] and B.defect_zero(C) == []
    Pk = pc.with_loewy("1a")
    assert Pk.loewy.layers == [{"1a": 1}, {"1b": 1}, {"1a": 1}]
    assert c_invariant(Pk, pc.G, 3) == Fraction(1)
    H = heart(Pk.module, pc.catalog)
    assert H.dim == 1 and chop(H, pc.catalog).multiplicities == {"1b": 1}
    Om = omega(trivial(pc.G, pc.F), pc)
    assert Om.dim == 2
    assert head_multiplicities(Om, pc.catalog) == {"1b": 1}


def test_sl2_5_structure():
    pc = covers("sl2_5")
    C = cartan_matrix(pc)
    assert C.is_symmetric()
    B = block_partition(C, pc.catalog.trivial_id)
    dims = sorted(sorted(pc.catalog[s].dim for s in b) for b in B.blocks)
    assert dims == [[1, 3], [2, 4], [5]]
    assert [pc.catalog[b[0]].dim for b in B.defect_zero(C)] == [5]
    for sid in pc.catalog.ids:
        P = pc.with_loewy(sid)
        assert P.dim % 5 == 0
        if P.dim > pc.catalog[sid].dim:
            assert P.loewy.length == 3


def test_socle_and_head_of_pims():
    pc = covers("sl2_5")
    for sid in pc.catalog.ids:
        P = pc.cover(sid).module
        assert head_multiplicities(P, pc.catalog) == {sid: 1}
        _, soc = socle(P, pc.catalog)
        assert soc == {sid: 1}


def test_indecomposable_summands_of_sums():
    pc = covers("s3")
    cat = pc.catalog
    P = pc.cover("1a").module
    M = direct_sum(P, trivial(pc.G, pc.F), cat["1b"].module)
    parts = indecomposable_summands(M, cat)
    assert sorted(s.module.dim for s in parts) == [1, 1, 3]
    assert all(s.certified for s in parts)
    assert len(indecomposable_summands(P, cat)) == 1


def test_split_by_heads():
    F = field(3)
    cat = SimpleCatalog(S3, F)
    chop(perm_rep(S3, F), cat)
    M = direct_sum(trivial(S3, F), cat["1b"].module)
    N = Submodule.from_space(M, np.array([[1, 0]], dtype=F.dtype))
    split = try_split_by_heads(M, N, cat)
    assert split is not None and split.complement.shape[0] == 1
    # a uniserial module has no such split
    C3 = PermGroup.from_images([[2, 3, 1]])
    cat3 = SimpleCatalog(C3, F)
    R = perm_rep(C3, F)
    chop(R, cat3)
    soc = Submodule.span(R, np.ones((1, 3), dtype=F.dtype))
    assert try_split_by_heads(R, soc, cat3) is None


def test_loewy_of_uniserial_regular_module():
    F = field(3)
    C3 = PermGroup.from_images([[2, 3, 1]])
    cat = SimpleCatalog(C3, F)
    data = loewy(perm_rep(C3, F), cat)
    assert data.layers == [{"1a": 1}] * 3
    assert [r.shape[0] for r in data.radicals] == [3, 2, 1, 0]


def test_covers_reach_group_order():
    for name in ("s3", "sl2_5", "a5", "d8", "q8"):
        pc = covers(name)
        assert pc.weighted_total() == pc.G.order()
        for sid, P in pc.pims.items():
            assert pc.is_projective(P.module)
            assert linalg.rank(pc.F, P.generator[None, :]) == 1


def test_dual_of_pk_is_pk():
    for name in ("s3", "sl2_5", "a5", "q8"):
        pc = covers(name)
        D = dual(pc.cover(pc.catalog.trivial_id).module)
        assert pc.is_projective(D)
        assert head_multiplicities(D, pc.catalog) == {pc.catalog.trivial_id: 1}
