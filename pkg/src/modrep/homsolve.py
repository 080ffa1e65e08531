"""Solving for module homomorphisms by spinning generators.

A homomorphism ``phi: M -> N`` is fixed by the images of a generating
set ``b_1, .., b_r`` of M.  Each image is searched for in a prescribed
subspace ``Z_k`` of N (for instance the generalized kernel of an algebra
element that kills ``b_k``), so the unknowns are coordinates
``alpha_k`` with ``phi(b_k) = alpha_k Z_k``.  Spinning the ``b_k`` gives
a basis ``E`` of M made of words applied to generators; words that land
back in the span give linear relations on ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fflinalg import GF, linalg


class HomError(RuntimeError):
    """The seeds do not generate the source module."""


@dataclass
class SpinTree:
    """Basis of a module built from seeds by single generator steps.

    ``E[i] = E[parent[i]] @ A[gen[i]]`` for tree nodes, ``E[i] = seed``
    for roots (``parent[i] == -1``, ``root[i]`` the seed index).
    ``edges`` are the (node, generator) pairs whose image was dependent.
    """

    E: np.ndarray
    parent: list
    gen: list
    root: list
    edges: list
    used_seeds: list

    @property
    def dim(self) -> int:
        return self.E.shape[0]


def spin_tree(F: GF, mats, seeds: np.ndarray, ambient: int) -> SpinTree:
    space = linalg.EchelonSpace(F, ambient)
    rows: list[np.ndarray] = []
    parent: list[int] = []
    gen: list[int] = []
    root: list[int] = []
    edges: list[tuple[int, int]] = []
    used: list[int] = []
    for k, b in enumerate(np.atleast_2d(seeds)):
        if space.dim == ambient:
            break
        if space.contains(b):
            continue
        space.add(b[None, :])
        rows.append(b.copy())
        parent.append(-1)
        gen.append(-1)
        root.append(k)
        used.append(k)
        frontier = [len(rows) - 1]
        while frontier:
            src = np.array([rows[i] for i in frontier])
            cand, labels = [], []
            for g, a in enumerate(mats):
                cand.append(F.matmul(src, a))
                labels.extend((i, g) for i in frontier)
            Y = np.vstack(cand)
            R = space.reduce(Y)
            nz = np.flatnonzero(R.any(axis=1))
            indep: list[int] = []
            if nz.size:
                _, piv = linalg.rref(F, R[nz].T.copy())
                indep = [int(nz[j]) for j in piv]
            indep_set = set(indep)
            frontier = []
            for idx, (i, g) in enumerate(labels):
                if idx in indep_set:
                    rows.append(Y[idx])
                    parent.append(i)
                    gen.append(g)
                    root.append(k)
                    frontier.append(len(rows) - 1)
                else:
                    edges.append((i, g))
            if indep:
                space.add(R[indep])
    E = np.array(rows, dtype=F.dtype).reshape(len(rows), ambient)
    return SpinTree(E, parent, gen, root, edges, used)


def _apply_left(F: GF, K: np.ndarray, Phi: np.ndarray) -> np.ndarray:
    """Phi[:, d, :] -> sum_e K[d', e] Phi[:, e, :]."""
    n, D, m = Phi.shape
    flat = Phi.transpose(0, 2, 1).reshape(n * m, D)
    out = F.matmul(flat, np.ascontiguousarray(K.T))
    return out.reshape(n, m, K.shape[0]).transpose(0, 2, 1).copy()


def solve_homs(
    F: GF,
    src_mats,
    dst_mats,
    seeds: np.ndarray,
    targets: list[np.ndarray],
    verify: bool = True,
) -> list[np.ndarray]:
    """Basis of Hom(M, N) given seeds generating M.

    Parameters
    ----------
    src_mats, dst_mats : list of arrays
        Generator matrices of M (n x n) and N (m x m).
    seeds : array (r, n)
        Candidate generators of M; dependent ones are skipped.
    targets : list of arrays
        ``targets[k]`` (d_k x m) spans the space where ``phi(seeds[k])``
        must lie.  Every homomorphism must satisfy this for the result
        to be the full hom space.

    Returns
    -------
    list of (n x m) arrays X with ``A_g X = X B_g`` for every generator.
    """
    n = src_mats[0].shape[0] if src_mats else seeds.shape[1]
    m = dst_mats[0].shape[0] if dst_mats else 0
    if n == 0 or m == 0:
        return []
    tree = spin_tree(F, src_mats, seeds, n)
    if tree.dim != n:
        raise HomError(f"seeds span a submodule of dimension {tree.dim} < {n}")
    used = tree.used_seeds
    offsets = {}
    D = 0
    for k in used:
        offsets[k] = D
        D += targets[k].shape[0]
    if D == 0:
        return []
    Phi = np.zeros((n, D, m), dtype=F.dtype)
    for i in range(n):
        if tree.parent[i] < 0:
            k = tree.root[i]
            o = offsets[k]
            Phi[i, o : o + targets[k].shape[0], :] = targets[k]
    # fill tree nodes layer by layer (parents precede children)
    depth = [0] * n
    for i in range(n):
        if tree.parent[i] >= 0:
            depth[i] = depth[tree.parent[i]] + 1
    for d in range(1, max(depth) + 1 if depth else 1):
        layer = [i for i in range(n) if depth[i] == d]
        for g, b in enumerate(dst_mats):
            nodes = [i for i in layer if tree.gen[i] == g]
            if not nodes:
                continue
            par = [tree.parent[i] for i in nodes]
            blk = F.matmul(Phi[par].reshape(len(par) * D, m), b)
            Phi[nodes] = blk.reshape(len(nodes), D, m)

    E_inv = linalg.inverse(F, tree.E)
    edges = tree.edges
    pos = 0
    chunk = 4
    while pos < len(edges) and Phi.shape[1]:
        part = edges[pos : pos + chunk]
        pos += len(part)
        chunk = min(chunk * 2, 256)
        Dc = Phi.shape[1]
        blocks = []
        for g in range(len(src_mats)):
            idx = [i for i, gg in part if gg == g]
            if not idx:
                continue
            C = F.matmul(F.matmul(tree.E[idx], src_mats[g]), E_inv)
            T1 = F.matmul(Phi[idx].reshape(len(idx) * Dc, m), dst_mats[g]).reshape(len(idx), Dc, m)
            T2 = F.matmul(C, Phi.reshape(n, Dc * m)).reshape(len(idx), Dc, m)
            blocks.append(F.vsub(T1, T2).transpose(1, 0, 2).reshape(Dc, len(idx) * m))
        R = np.hstack(blocks)
        if not R.any():
            continue
        K = linalg.nullspace(F, R)
        if K.shape[0] == 0:
            return []
        Phi = _apply_left(F, K, Phi)
    out = []
    for d in range(Phi.shape[1]):
        X = F.matmul(E_inv, np.ascontiguousarray(Phi[:, d, :]))
        out.append(X)
    if verify:
        for X in out:
            for a, b in zip(src_mats, dst_mats):
                if not np.array_equal(F.matmul(a, X), F.matmul(X, b)):
                    raise AssertionError("homomorphism solver produced a non-intertwining map")
    return out
