from __future__ import annotations

import numpy as np
import pytest

from modrep.fflinalg import field, linalg
from modrep.meataxe import (
    ResourceCapExceeded,
    SimpleCatalog,
    chop,
    endo_dim,
    is_isomorphic,
    norton,
)
from modrep.permgroup import PermGroup
from modrep.repmodule import from_arrays, induce, perm_rep, tensor, trivial

from conftest import group_data

S3 = PermGroup.from_images([[2, 3, 1], [2, 1, 3]])


def conjugate(M, rng):
    """M in a random basis."""
    F = M.field
    while True:
        X = F.random((M.dim, M.dim), rng)
        if linalg.rank(F, X) == M.dim:
            break
    Xi = linalg.inverse(F, X)
    return from_arrays(M.group, F, [F.matmul(F.matmul(X, a), Xi) for a in M.mats], "conj", dim=M.dim)


def test_s3_permutation_module_char3():
    # Brauer characters on the 3'-classes {1, (12)}: perm = (3, 1), k = (1, 1), sgn = (1, -1)
    F = field(3)
    cat = SimpleCatalog(S3, F)
    comp = chop(perm_rep(S3, F), cat)
    assert comp.as_list() == [("1a", 2), ("1b", 1)]
    assert comp.total_dim == 3


def test_a5_over_gf4_and_gf2():
    # Brauer-character count on 1, 3A, 5A, 5B gives induce(k_C5) = 4k + 2(2a) + 2(2b)
    _, G, H, _, _ = group_data("a5")
    F4 = field(2, 2)
    cat4 = SimpleCatalog(G, F4)
    assert chop(induce(trivial(H, F4), G), cat4).as_list() == [("1a", 4), ("2a", 2), ("2b", 2)]
    assert [e.endo_dim for e in cat4] == [1, 1, 1]
    # over GF(2) the Galois-conjugate 2-dim simples fuse into one 4-dim simple
    F2 = field(2)
    cat2 = SimpleCatalog(G, F2)
    assert chop(induce(trivial(H, F2), G), cat2).as_list() == [("1a", 4), ("4a", 2)]
    assert cat2["4a"].endo_dim == 2 and not cat2.splitting
    assert endo_dim(cat2["4a"].module) == 2
    # the deleted permutation module is the Steinberg module
    assert chop(perm_rep(G, F2), cat2).as_list() == [("1a", 1), ("4b", 1)]
    assert cat2["4b"].endo_dim == 1


def test_certificates_replay():
    _, G, H, _, F = group_data("sl2_5")
    cat = SimpleCatalog(G, F)
    chop(induce(trivial(H, F), G), cat)
    for e in cat:
        assert e.certificate.replay(e.module)
    # the trivial summand of a permutation module never carries a certificate
    res = norton(perm_rep(G, F))
    assert res.submodule is not None


def test_identify_is_basis_independent():
    _, G, H, _, F = group_data("sl2_5")
    cat = SimpleCatalog(G, F)
    chop(induce(trivial(H, F), G), cat)
    rng = np.random.default_rng(5)
    n = len(cat)
    for e in list(cat):
        C = conjugate(e.module, rng)
        assert cat.find(C) == e.id
        ok, X = is_isomorphic(e.module, C)
        assert ok
        for a, b in zip(e.module.mats, C.mats):
            assert np.array_equal(F.matmul(X, a), F.matmul(b, X)) or np.array_equal(F.matmul(a, X), F.matmul(X, b))
    assert len(cat) == n


def test_non_isomorphic_simples():
    F = field(3)
    cat = SimpleCatalog(S3, F)
    chop(perm_rep(S3, F), cat)
    ok, _ = is_isomorphic(cat["1a"].module, cat["1b"].module)
    assert not ok
    assert cat.dual_id("1b") == "1b"


def test_chop_seed_independent():
    _, G, H, _, F = group_data("psl2_8")
    M = induce(trivial(H, F), G)
    dims = []
    for seed in (1, 2, 0x5EED):
        cat = SimpleCatalog(G, F, seed=seed)
        comp = chop(tensor(M, trivial(G, F)), cat, seed=seed)
        dims.append(sorted((comp.dims[s], m) for s, m in comp.multiplicities.items()))
    assert dims[0] == dims[1] == dims[2]


def test_budget_exhaustion_raises():
    F = field(3)
    with pytest.raises(ResourceCapExceeded):
        norton(perm_rep(S3, F), budget=0)
