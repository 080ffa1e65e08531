"""Build the shipped group files from explicit constructions.

Every group is realised as a permutation group on a natural set of
points (vectors, projective points, cosets).  The script checks each
order against the known value, picks a small generating set with a
seeded search, and records the p'-subgroup used for induction and a
Sylow p-subgroup.  Run from the repository root:

    python tools/make_groups.py
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from modrep.permgroup import PermGroup, p_subgroup_search, perm_order, perm_to_images  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "src" / "modrep" / "data" / "groups"


# -- small field helpers ------------------------------------------------------

class GF9:
    """GF(9) = GF(3)[i] with i^2 = -1; elements are pairs (a, b) = a + b i."""

    elems = [(a, b) for a in range(3) for b in range(3)]

    @staticmethod
    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    @staticmethod
    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    @staticmethod
    def bar(x):  # Frobenius x -> x^3
        return (x[0], (-x[1]) % 3)

    @classmethod
    def inv(cls, x):
        return next(y for y in cls.elems if cls.mul(x, y) == (1, 0))


def gf8_tables():
    """GF(8) = GF(2)[x]/(x^3 + x + 1), elements 0..7 as bit vectors."""
    def mul(a, b):
        r = 0
        for i in range(3):
            if b >> i & 1:
                r ^= a << i
        for i in (4, 3):
            if r >> i & 1:
                r ^= 0b1011 << (i - 3)
        return r
    return mul


def vec_mat(v, g, add, mul, zero):
    n = len(v)
    out = []
    for j in range(n):
        s = zero
        for i in range(n):
            s = add(s, mul(v[i], g[i][j]))
        out.append(s)
    return tuple(out)


def normalize_projective(v, mul, inv, zero, one):
    for c in v:
        if c != zero:
            s = inv(c)
            return tuple(mul(s, x) for x in v)
    raise ValueError("zero vector")


def action(points, f):
    index = {p: i for i, p in enumerate(points)}
    return tuple(index[f(p)] for p in points)


def two_generators(G: PermGroup, seed: int, tries: int = 4000):
    """A seeded search for a generating pair of G."""
    rng = np.random.default_rng(seed)
    target = G.order()
    for _ in range(tries):
        a, b = G.random_element(rng), G.random_element(rng)
        if PermGroup([a, b], degree=G.degree).order() == target:
            return [a, b]
    return list(G.generators)


def write(name, G, p, H, U, provenance, extra=None, degree_note=""):
    data = {
        "name": name,
        "degree": G.degree,
        "order": G.order(),
        "generators": [perm_to_images(g) for g in G.generators],
        "p": p,
        "pprime_subgroup": [perm_to_images(h) for h in H.generators],
        "sylow_subgroup": [perm_to_images(u) for u in U.generators],
        "provenance": provenance,
    }
    if extra:
        data.update(extra)
    path = OUT / f"{name}.json"
    if path.exists():
        # hand-maintained labels and expectations survive regeneration
        old = json.loads(path.read_text())
        data.update({k: old[k] for k in ("labels", "expected") if k in old})
    path.write_text(json.dumps(data, indent=1) + "\n")
    print(f"{name}: degree {G.degree}, order {G.order()}, |H| = {H.order()}, |U| = {U.order()}")


def sylow(G, p, seed=7):
    return p_subgroup_search(G, p, "sylow_p", seed=seed, trials=20000)


def subgroup_of(G, gens):
    H = PermGroup(gens, degree=G.degree)
    assert H.is_subgroup_of(G)
    return H


# -- constructions ---------------------------------------------------------------

def small_groups():
    C3 = PermGroup.from_images([[2, 3, 1]])
    write("c3", C3, 3, PermGroup([], degree=3), C3, "cyclic group of order 3 on 3 points")

    S3 = PermGroup.from_images([[2, 3, 1], [2, 1, 3]])
    write("s3", S3, 3, S3.subgroup([(1, 0, 2)]), S3.subgroup([(1, 2, 0)]),
          "symmetric group on 3 points; p'-subgroup <(1,2)>")

    S6 = PermGroup.from_images([[2, 3, 4, 5, 6, 1], [2, 1, 3, 4, 5, 6]])
    H = S6.subgroup([(1, 2, 0, 3, 4, 5), (0, 1, 2, 4, 5, 3)])
    write("s6", S6, 2, H, sylow(S6, 2), "symmetric group on 6 points; p'-subgroup <(1,2,3),(4,5,6)>")

    A5 = PermGroup.from_images([[2, 3, 1, 4, 5], [1, 2, 4, 5, 3]])
    H = A5.subgroup([(1, 2, 3, 4, 0)])
    write("a5", A5, 2, H, sylow(A5, 2), "alternating group on 5 points (= SL2(4)); p'-subgroup <(1,2,3,4,5)>",
          extra={"field": {"p": 2, "deg": 2}})

    Q8 = PermGroup.from_images([[2, 3, 4, 1, 6, 7, 8, 5], [5, 8, 7, 6, 3, 2, 1, 4]])
    write("q8", Q8, 2, PermGroup([], degree=8), Q8, "quaternion group, regular action on 8 points")

    D8 = PermGroup.from_images([[2, 3, 4, 1], [4, 3, 2, 1]])
    write("d8", D8, 2, PermGroup([], degree=4), D8, "dihedral group of order 8 on the square's vertices")


def sl2_5():
    pts = [(a, b) for a in range(5) for b in range(5) if (a, b) != (0, 0)]
    add = lambda x, y: (x + y) % 5
    mul = lambda x, y: x * y % 5
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    gens = [action(pts, lambda v, g=g: vec_mat(v, g, add, mul, 0)) for g in mats]
    G = PermGroup(gens)
    assert G.order() == 120
    c = ((0, 1), (4, 4))  # trace -1: order 3
    H = subgroup_of(G, [action(pts, lambda v: vec_mat(v, c, add, mul, 0))])
    assert H.order() == 3
    write("sl2_5", G, 5, H, sylow(G, 5),
          "SL2(5) on the 24 nonzero vectors of GF(5)^2, generated by [[1,1],[0,1]] and [[1,0],[1,1]]; "
          "p'-subgroup generated by [[0,1],[-1,-1]] (order 3)")


def psl2_8():
    mul8 = gf8_tables()
    inv8 = {a: next(b for b in range(1, 8) if mul8(a, b) == 1) for a in range(1, 8)}
    INF = "inf"
    pts = list(range(8)) + [INF]

    def mobius(a, b, c, d):
        def f(z):
            if z == INF:
                return INF if c == 0 else mul8(a, inv8[c])
            num = mul8(a, z) ^ b
            den = mul8(c, z) ^ d
            if den == 0:
                return INF
            return mul8(num, inv8[den])
        return f

    alpha = 2  # x, a primitive element
    t = action(pts, mobius(1, 1, 0, 1))
    m = action(pts, mobius(alpha, 0, 0, 1))
    s = action(pts, mobius(0, 1, 1, 0))
    G = PermGroup([t, m, s])
    assert G.order() == 504
    G = PermGroup(two_generators(G, 11))
    H = subgroup_of(G, [action(pts, mobius(1, b, 0, 1)) for b in (1, 2, 4)])
    assert H.order() == 8
    write("psl2_8", G, 3, H, sylow(G, 3),
          "PSL2(8) acting on the projective line over GF(8) = GF(2)[x]/(x^3+x+1); "
          "generating pair found by seeded search in <z+1, xz, 1/z>; p'-subgroup: translations z -> z + b")
    frob = action(pts, lambda z: z if z == INF else mul8(z, z))
    G3 = PermGroup(list(G.generators) + [frob])
    assert G3.order() == 1512
    G3 = PermGroup(two_generators(G3, 12))
    H3 = subgroup_of(G3, H.generators)
    write("psl2_8_3", G3, 3, H3, sylow(G3, 3),
          "PSL2(8):3 = PSL2(8) extended by the field automorphism z -> z^2 on the projective line; "
          "p'-subgroup: translations z -> z + b")


def sl3_2():
    pts = [v for v in itertools.product(range(2), repeat=3) if any(v)]
    add = lambda x, y: x ^ y
    mul = lambda x, y: x & y
    mats = [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1), (1, 0, 0))]
    G = PermGroup([action(pts, lambda v, g=g: vec_mat(v, g, add, mul, 0)) for g in mats])
    assert G.order() == 168
    rng = np.random.default_rng(5)
    while True:
        a, b = G.random_element(rng), G.random_element(rng)
        if perm_order(a) == 7 and perm_order(b) == 3 and PermGroup([a, b], degree=7).order() == 21:
            break
    H = subgroup_of(G, [a, b])
    write("sl3_2", G, 2, H, sylow(G, 2),
          "SL3(2) on the 7 nonzero vectors of GF(2)^3; p'-subgroup 7:3 found by seeded search")


def su3_3():
    F = GF9
    zero, one = (0, 0), (1, 0)

    def form(x, y):  # x J y-bar^T with J antidiagonal
        s = zero
        for i in range(3):
            s = F.add(s, F.mul(x[i], F.bar(y[2 - i])))
        return s

    pts = []
    for v in itertools.product(F.elems, repeat=3):
        if any(c != zero for c in v) and form(v, v) == zero:
            nv = normalize_projective(v, F.mul, F.inv, zero, one)
            if nv not in pts:
                pts.append(nv)
    assert len(pts) == 28
    pts.sort()

    def apply(g):
        return lambda v: normalize_projective(vec_mat(v, g, F.add, F.mul, zero), F.mul, F.inv, zero, one)

    def unitary(g):
        rows = [tuple(r) for r in g]
        for i in range(3):
            for j in range(3):
                want = one if i + j == 2 else zero
                if form(rows[i], rows[j]) != want:
                    return False
        return True

    def det(g):
        a = g
        t1 = F.mul(a[0][0], F.add(F.mul(a[1][1], a[2][2]), F.mul((2, 0), F.mul(a[1][2], a[2][1]))))
        t2 = F.mul(a[0][1], F.add(F.mul(a[1][0], a[2][2]), F.mul((2, 0), F.mul(a[1][2], a[2][0]))))
        t3 = F.mul(a[0][2], F.add(F.mul(a[1][0], a[2][1]), F.mul((2, 0), F.mul(a[1][1], a[2][0]))))
        return F.add(F.add(t1, F.mul((2, 0), t2)), t3)

    upper = []
    for a, b in itertools.product(F.elems, repeat=2):
        for c in F.elems:
            g = ((one, a, b), (zero, one, c), (zero, zero, one))
            if unitary(g):
                upper.append(g)
    assert len(upper) == 27
    lower = [tuple(tuple(g[j][i] for j in range(3)) for i in range(3)) for g in upper]
    lower = [g for g in lower if unitary(g)]
    gens = [action(pts, apply(g)) for g in upper + lower if det(g) == one]
    G = PermGroup(gens)
    assert G.order() == 6048, G.order()
    G = PermGroup(two_generators(G, 13))
    H = subgroup_of(G, [action(pts, apply(g)) for g in upper])
    H = PermGroup(H.generators[:], degree=28)
    assert H.order() == 27
    H = PermGroup(_small_gens(H, 3), degree=28)
    U = sylow(G, 2)
    write("su3_3", G, 2, H, U,
          "SU3(3) = PSU3(3) on the 28 isotropic points of the Hermitian form x1*y3^3 + x2*y2^3 + x3*y1^3 "
          "over GF(9) = GF(3)[i]; generated by its upper and lower unitriangular subgroups, then a "
          "generating pair by seeded search; p'-subgroup: the upper unitriangular group 3^(1+2)")
    frob = action(pts, lambda v: tuple(F.bar(c) for c in v))
    G2 = PermGroup(list(G.generators) + [frob])
    assert G2.order() == 12096
    G2 = PermGroup(two_generators(G2, 14))
    H2 = subgroup_of(G2, H.generators)
    write("g2_2", G2, 2, H2, sylow(G2, 2),
          "G2(2) = U3(3):2 on the same 28 points, extended by the field automorphism x -> x^3; "
          "p'-subgroup: the upper unitriangular group 3^(1+2) of SU3(3)")


def _small_gens(H: PermGroup, k: int):
    """Greedy small generating set of H from its elements."""
    gens = []
    target = H.order()
    cur = PermGroup([], degree=H.degree)
    for g in sorted(H.elements()):
        if cur.order() == target:
            break
        if not cur.contains(g):
            gens.append(g)
            cur = PermGroup(gens, degree=H.degree)
    return gens


def c3c3_q8():
    pts = [(a, b) for a in range(3) for b in range(3)]
    add = lambda x, y: (x + y) % 3
    mul = lambda x, y: x * y % 3
    q8 = [((0, 1), (2, 0)), ((1, 1), (1, 2))]
    gens = [action(pts, lambda v, g=g: vec_mat(v, g, add, mul, 0)) for g in q8]
    trans = action(pts, lambda v: ((v[0] + 1) % 3, v[1]))
    G = PermGroup([trans] + gens)
    assert G.order() == 72
    H = subgroup_of(G, gens)
    assert H.order() == 8
    N = subgroup_of(G, [trans, action(pts, lambda v: (v[0], (v[1] + 1) % 3))])
    assert N.order() == 9 and N.is_normal_in(G)
    write("c3c3_q8", G, 3, H, N,
          "C3^2:Q8 acting affinely on GF(3)^2: translations and Q8 = <[[0,1],[-1,0]], [[1,1],[1,-1]]>; "
          "p'-subgroup: the point stabilizer Q8",
          extra={"normal_subgroup": [perm_to_images(n) for n in N.generators]})


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    small_groups()
    sl2_5()
    psl2_8()
    sl3_2()
    su3_3()
    c3c3_q8()
