"""Permutation groups: stabilizer chains, membership, cosets and the
p-subgroup constructions the representation layer needs.

Permutations are tuples of 0-based images and act on the right:
``i^(gh) = (i^g)^h``.  The serialised form is a 1-based image list.
Every element reached through the stabilizer chain carries a word in
the group's generators (signed 1-based indices, negative for inverses),
so that any module given by generator matrices can evaluate it.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, Sequence

import numpy as np

Perm = tuple  # tuple[int, ...]
Word = tuple  # tuple[int, ...] of signed 1-based generator indices


class GroupError(ValueError):
    """Invalid permutation data or a subgroup that is not contained."""


def perm_from_images(images: Sequence[int]) -> Perm:
    """Validate a 1-based image list and convert it to a 0-based tuple."""
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise GroupError(f"image list {list(images)} is not a bijection of 1..{n}")
    return tuple(int(i) - 1 for i in images)


def perm_to_images(g: Perm) -> list[int]:
    return [i + 1 for i in g]


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(g: Perm, h: Perm) -> Perm:
    """The product g*h: first g, then h."""
    return tuple(map(h.__getitem__, g))


def inv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


def power(g: Perm, e: int) -> Perm:
    if e < 0:
        g, e = inv(g), -e
    r = identity(len(g))
    while e:
        if e & 1:
            r = mul(r, g)
        g = mul(g, g)
        e >>= 1
    return r


def perm_order(g: Perm) -> int:
    seen = [False] * len(g)
    out = 1
    for i in range(len(g)):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            out = out * length // math.gcd(out, length)
    return out


def commutator(g: Perm, h: Perm) -> Perm:
    return mul(mul(inv(g), inv(h)), mul(g, h))


def is_identity(g: Perm) -> bool:
    return all(i == j for i, j in enumerate(g))


def word_inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def word_concat(*ws: Word) -> Word:
    out: list[int] = []
    for w in ws:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "trans", "checked")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens: list[tuple[Perm, Word]] = []
        # point -> (element mapping base to point, its word)
        self.trans: dict[int, tuple[Perm, Word]] = {base: (identity(degree), ())}
        self.checked: set[tuple[int, int]] = set()

    def add_gen(self, g: Perm, w: Word) -> None:
        self.gens.append((g, w))
        queue = deque()
        for pt in list(self.trans):
            img = g[pt]
            if img not in self.trans:
                u, uw = self.trans[pt]
                self.trans[img] = (mul(u, g), word_concat(uw, w))
                queue.append(img)
        while queue:
            pt = queue.popleft()
            u, uw = self.trans[pt]
            for s, sw in self.gens:
                img = s[pt]
                if img not in self.trans:
                    self.trans[img] = (mul(u, s), word_concat(uw, sw))
                    queue.append(img)


# Groups up to this order get shortest words from a Cayley-graph search.
CAYLEY_LIMIT = 60_000


class PermGroup:
    """A permutation group given by generators.

    Parameters
    ----------
    generators : sequence of tuples
        0-based image tuples, all of the same degree.
    degree : int, optional
        Needed when ``generators`` is empty (the trivial group).
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None, name: str = ""):
        gens = [tuple(int(i) for i in g) for g in generators]
        if degree is None:
            if not gens:
                raise GroupError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupError("generator is not a permutation of the stated degree")
        self.degree = degree
        self.generators: list[Perm] = gens
        self.name = name
        self._chain: list[_Level] | None = None
        self._cayley: dict[Perm, tuple[Perm, int]] | None = None

    @classmethod
    def from_images(cls, image_lists, name: str = "", degree: int | None = None) -> "PermGroup":
        return cls([perm_from_images(im) for im in image_lists], degree=degree, name=name)

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} ngens={len(self.generators)}>"

    # -- stabilizer chain ----------------------------------------------

    @property
    def chain(self) -> list[_Level]:
        if self._chain is None:
            self._chain = []
            for i, g in enumerate(self.generators):
                self._insert(g, (i + 1,))
        return self._chain

    def _sift(self, g: Perm, start: int = 0):
        """Sift g through levels start.. ; return (residue, level reached, word).

        The word w satisfies g = residue * w (as group elements).
        """
        chain = self._chain
        word: Word = ()
        for i in range(start, len(chain)):
            lev = chain[i]
            pt = g[lev.base]
            if pt not in lev.trans:
                return g, i, word
            u, uw = lev.trans[pt]
            g = mul(g, inv(u))
            word = word_concat(uw, word)
        return g, len(chain), word

    def _new_level(self, g: Perm) -> None:
        bases = {lev.base for lev in self._chain}
        pt = next(k for k in range(self.degree) if g[k] != k and k not in bases)
        self._chain.append(_Level(pt, self.degree))

    def _add_residue(self, res: Perm, res_word: Word, first: int, last: int) -> None:
        """Add res (fixing the first ``last`` base points) to levels first..last."""
        if last == len(self._chain):
            self._new_level(res)
        for lv in range(first, last + 1):
            self._chain[lv].add_gen(res, res_word)
        for lv in range(last, first - 1, -1):
            self._complete(lv)

    def _insert(self, g: Perm, w: Word) -> None:
        res, j, rw = self._sift(g, 0)
        if is_identity(res):
            return
        self._add_residue(res, word_concat(w, word_inverse(rw)), 0, j)

    def _complete(self, lv: int) -> None:
        """Make level lv's Schreier generators sift through the deeper levels."""
        lev = self._chain[lv]
        progress = True
        while progress:
            progress = False
            for pt in list(lev.trans):
                for k in range(len(lev.gens)):
                    if (pt, k) in lev.checked:
                        continue
                    lev.checked.add((pt, k))
                    u, uw = lev.trans[pt]
                    s, sw = lev.gens[k]
                    v, vw = lev.trans[s[pt]]
                    y = mul(mul(u, s), inv(v))
                    if is_identity(y):
                        continue
                    res, j, rw = self._sift(y, lv + 1)
                    if is_identity(res):
                        continue
                    yw = word_concat(uw, sw, word_inverse(vw))
                    self._add_residue(res, word_concat(yw, word_inverse(rw)), lv + 1, j)
                    progress = True

    @property
    def base(self) -> list[int]:
        return [lev.base for lev in self.chain]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lev.trans) for lev in self.chain]

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    def __contains__(self, g: Perm) -> bool:
        return self.contains(g)

    def contains(self, g: Perm) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            raise GroupError(f"degree mismatch: {len(g)} vs {self.degree}")
        self.chain
        res, _, _ = self._sift(g)
        return is_identity(res)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def elements(self) -> Iterator[Perm]:
        """All elements, as products of transversal elements (deepest first)."""
        chain = self.chain
        n = self.degree

        def rec(i: int, acc: Perm):
            if i < 0:
                yield acc
                return
            for u, _ in chain[i].trans.values():
                yield from rec(i - 1, mul(acc, u))

        yield from rec(len(chain) - 1, identity(n))

    # -- words ---------------------------------------------------------

    def _cayley_graph(self) -> dict[Perm, tuple[Perm, int]]:
        if self._cayley is None:
            ident = identity(self.degree)
            gens = []
            for i, g in enumerate(self.generators):
                gens.append((g, i + 1))
                gi = inv(g)
                if gi != g:
                    gens.append((gi, -(i + 1)))
            tree: dict[Perm, tuple[Perm, int]] = {ident: (ident, 0)}
            frontier = [ident]
            while frontier:
                nxt = []
                for x in frontier:
                    for g, label in gens:
                        y = mul(x, g)
                        if y not in tree:
                            tree[y] = (x, label)
                            nxt.append(y)
                frontier = nxt
            self._cayley = tree
        return self._cayley

    def word(self, g: Perm) -> Word:
        """A word in the generators evaluating to g (signed 1-based letters)."""
        g = tuple(g)
        if not self.contains(g):
            raise GroupError("element is not in the group")
        if self.order() <= CAYLEY_LIMIT:
            tree = self._cayley_graph()
            letters = []
            while True:
                parent, label = tree[g]
                if label == 0:
                    break
                letters.append(label)
                g = parent
            return tuple(reversed(letters))
        _, _, w = self._sift(g)
        return w

    def evaluate_word(self, w: Word) -> Perm:
        r = identity(self.degree)
        for x in w:
            g = self.generators[abs(x) - 1]
            r = mul(r, g if x > 0 else inv(g))
        return r

    # -- element sampling ------------------------------------------------

    def random_element(self, rng: np.random.Generator) -> Perm:
        """Uniform random element from the stabilizer chain."""
        r = identity(self.degree)
        for lev in reversed(self.chain):
            pts = list(lev.trans)
            u, _ = lev.trans[pts[int(rng.integers(len(pts)))]]
            r = mul(r, u)
        return r

    # -- subgroup constructions -----------------------------------------

    def subgroup(self, gens: Iterable[Perm], name: str = "", check: bool = True) -> "PermGroup":
        gens = [tuple(g) for g in gens]
        if check:
            for g in gens:
                if not self.contains(g):
                    raise GroupError("subgroup generator not contained in the group")
        return PermGroup(gens, degree=self.degree, name=name)

    def is_trivial(self) -> bool:
        return all(is_identity(g) for g in self.generators)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(mul(a, b) == mul(b, a) for a in gs for b in gs)

    def is_normal_in(self, G: "PermGroup") -> bool:
        return all(self.contains(mul(mul(inv(g), h), g)) for g in G.generators for h in self.generators)


def group_order(G: PermGroup) -> int:
    return G.order()


def membership(G: PermGroup, g: Perm) -> bool:
    return G.contains(g)


def _check_subgroup(G: PermGroup, H: PermGroup) -> None:
    if H.degree != G.degree or not all(G.contains(h) for h in H.generators):
        raise GroupError("subgroup is not contained in the group")


class CosetTable:
    """Right cosets Hg of H in G with their permutation action.

    ``reps[0]`` is the identity; ``action[j][i]`` is the coset index of
    ``reps[i] * G.generators[j]`` and ``cocycle[j][i]`` the element
    ``reps[i] * g_j * reps[action]^-1`` of H.
    """

    def __init__(self, G: PermGroup, H: PermGroup):
        _check_subgroup(G, H)
        self.G, self.H = G, H
        self._h_elems = list(H.elements())
        key = self._key
        ident = identity(G.degree)
        self.reps: list[Perm] = [ident]
        index = {key(ident): 0}
        self.action = [[0] * 0 for _ in G.generators]
        i = 0
        while i < len(self.reps):
            r = self.reps[i]
            for j, g in enumerate(G.generators):
                x = mul(r, g)
                k = key(x)
                if k not in index:
                    index[k] = len(self.reps)
                    self.reps.append(x)
                self.action[j].append(index[k])
            i += 1
        self._index = index
        self.cocycle = [
            [mul(mul(self.reps[i], g), inv(self.reps[self.action[j][i]])) for i in range(len(self.reps))]
            for j, g in enumerate(G.generators)
        ]

    def _key(self, x: Perm) -> Perm:
        """Canonical element of the coset Hx."""
        return min(mul(h, x) for h in self._h_elems)

    def __len__(self) -> int:
        return len(self.reps)

    def coset_of(self, g: Perm) -> int:
        return self._index[self._key(tuple(g))]

    def permutation_group(self) -> PermGroup:
        """G acting on the cosets (by 0-based coset index)."""
        return PermGroup([tuple(a) for a in self.action], degree=len(self.reps))


def coset_reps(G: PermGroup, H: PermGroup) -> list[Perm]:
    """Right coset representatives of H in G, identity first."""
    return CosetTable(G, H).reps


def normal_closure(G: PermGroup, S: Iterable[Perm]) -> PermGroup:
    S = [tuple(s) for s in S]
    for s in S:
        if not G.contains(s):
            raise GroupError("element not contained in the group")
    gens = [s for s in S if not is_identity(s)]
    N = PermGroup(gens, degree=G.degree)
    queue = list(gens)
    while queue:
        h = queue.pop()
        for g in G.generators:
            c = mul(mul(inv(g), h), g)
            if not N.contains(c):
                gens.append(c)
                N = PermGroup(gens, degree=G.degree)
                queue.append(c)
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for i, a in enumerate(G.generators) for b in G.generators[i + 1 :]]
    return normal_closure(G, comms)


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def frattini_pgroup(U: PermGroup, p: int) -> PermGroup:
    """Frattini subgroup of a p-group: the derived subgroup times p-th powers."""
    if not is_p_power(U.order(), p):
        raise GroupError(f"group order {U.order()} is not a power of {p}")
    D = derived_subgroup(U)
    gens = [g for g in D.generators] + [power(g, p) for g in U.generators]
    gens = [g for g in gens if not is_identity(g)]
    return PermGroup(gens, degree=U.degree)


class SubgroupNotFound(GroupError):
    pass


def _p_element(g: Perm, p: int) -> Perm:
    o = perm_order(g)
    return power(g, o // p_part(o, p))


def _pprime_element(g: Perm, p: int) -> Perm:
    o = perm_order(g)
    return power(g, p_part(o, p))


def p_subgroup_search(G: PermGroup, p: int, mode: str = "sylow_p", seed: int = 0x5EED,
                      trials: int = 2000) -> PermGroup:
    """Sylow p-subgroup by randomized ascent, or some p'-subgroup.

    ``sylow_p`` grows a p-subgroup P by random p-elements of G that
    normalize P and lie outside it, until |P| = |G|_p.
    ``hall_p_prime_heuristic`` returns the largest p'-subgroup found among
    groups generated by pairs of random p'-elements.
    """
    rng = np.random.default_rng(seed)
    n = G.order()
    if mode == "sylow_p":
        target = p_part(n, p)
        P = PermGroup([], degree=G.degree)
        if target == 1:
            return P
        for _ in range(trials):
            if P.order() == target:
                return P
            x = _p_element(G.random_element(rng), p)
            if is_identity(x) or P.contains(x):
                continue
            # replace x by a conjugate-free candidate: any p-element normalizing P
            if all(P.contains(mul(mul(inv(x), h), x)) for h in P.generators):
                P = PermGroup(P.generators + [x], degree=G.degree)
                continue
            # otherwise look inside N_G(P) via the p-part of x's "normalizing" products
            y = _normalizing_p_element(G, P, p, rng, tries=20)
            if y is not None:
                P = PermGroup(P.generators + [y], degree=G.degree)
        if P.order() == target:
            return P
        raise SubgroupNotFound(
            f"no Sylow {p}-subgroup found in {trials} trials; supply it in the group file"
        )
    if mode == "hall_p_prime_heuristic":
        best = PermGroup([], degree=G.degree)
        for _ in range(trials // 20 or 1):
            a = _pprime_element(G.random_element(rng), p)
            b = _pprime_element(G.random_element(rng), p)
            H = PermGroup([a, b], degree=G.degree)
            o = H.order()
            if o % p and o > best.order():
                best = H
        return best
    raise ValueError(f"unknown search mode {mode!r}")


def _normalizing_p_element(G, P, p, rng, tries):
    for _ in range(tries):
        x = _p_element(G.random_element(rng), p)
        if is_identity(x) or P.contains(x):
            continue
        if all(P.contains(mul(mul(inv(x), h), x)) for h in P.generators):
            return x
    return None


# -- small-group predicates ------------------------------------------------

def center(U: PermGroup) -> list[Perm]:
    gens = U.generators
    return [z for z in U.elements() if all(mul(z, g) == mul(g, z) for g in gens)]


def max_element_order(U: PermGroup) -> int:
    return max(perm_order(g) for g in U.elements())


def is_cyclic(U: PermGroup) -> bool:
    return max_element_order(U) == U.order()


def sylow_shape(U: PermGroup, p: int) -> str:
    """'cyclic', 'maximal_class' (dihedral, semidihedral or generalized
    quaternion, including the Klein four group) or 'other'."""
    n = U.order()
    if n == 1 or is_cyclic(U):
        return "cyclic"
    if p != 2:
        return "other"
    if n == 4:
        return "maximal_class"  # Klein four group = dihedral of order 4
    if U.is_abelian():
        return "other"
    if max_element_order(U) == n // 2 and len(center(U)) == 2:
        return "maximal_class"
    return "other"


def quotient_action(G: PermGroup, N: PermGroup) -> PermGroup:
    """G/N as the permutation group of G acting on the cosets of normal N."""
    if not N.is_normal_in(G):
        raise GroupError("subgroup is not normal")
    return CosetTable(G, N).permutation_group()
