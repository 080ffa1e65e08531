"""The MeatAxe: composition factors with irreducibility certificates,
isomorphism of simple modules by standard bases, and a catalog of the
simple modules met so far.

Algebra elements ("words") come from a :class:`WordGenerator`.  The
recipe of word ``i`` depends only on the seed, the number of group
generators and the field, so the same word can be evaluated in any
module of the group; this is what makes standard bases and peakwords
comparable across modules.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from .fflinalg import GF, linalg, poly
from .fflinalg.matrix import charpoly_array
from .homsolve import solve_homs
from .repmodule import (
    Representation,
    annihilator,
    dual,
    from_arrays,
    quotient_action,
    sub_action,
    trivial,
)

log = logging.getLogger(__name__)

DEFAULT_SEED = 0x5EED
WORD_BUDGET = 200


class ResourceCapExceeded(RuntimeError):
    """A randomized search ran out of its budget.  Never a wrong answer."""


class NotCertified(ValueError):
    """An operation needs a certified irreducible module."""


# -- words -----------------------------------------------------------------

class WordGenerator:
    """Deterministic schedule of random algebra elements.

    Products are built one per word: ``P_j = P_a * g_b`` with ``a < j``
    and a generator ``g_b``; word ``i`` is a linear combination of the
    newest product and a few earlier ones with random coefficients.
    """

    def __init__(self, ngens: int, q: int, seed: int = DEFAULT_SEED):
        self.ngens = ngens
        self.q = q
        self.seed = seed
        self._rng = np.random.default_rng(seed)
        self.products: list[tuple[int, int]] = [(-1, i) for i in range(ngens)]
        self.recipes: list[tuple[tuple[int, int], ...]] = []

    def recipe(self, i: int) -> tuple[tuple[int, int], ...]:
        """Terms (coefficient, product index) of word i."""
        while len(self.recipes) <= i:
            self._extend()
        return self.recipes[i]

    def _extend(self) -> None:
        if self.ngens == 0:
            # trivial group: the group algebra is the field itself
            self.recipes.append(((1, -1),))
            return
        rng = self._rng
        j = len(self.products)
        a = int(rng.integers(j))
        b = int(rng.integers(self.ngens))
        self.products.append((a, b))
        extra = rng.choice(j, size=min(j, int(rng.integers(1, 4))), replace=False)
        terms = [(1, j)]
        for t in sorted(int(x) for x in extra):
            c = int(rng.integers(1, self.q)) if self.q > 2 else 1
            terms.append((c, t))
        self.recipes.append(tuple(terms))


_GENERATORS: dict[tuple[int, int, int], WordGenerator] = {}


def word_generator(ngens: int, q: int, seed: int) -> WordGenerator:
    key = (ngens, q, seed)
    if key not in _GENERATORS:
        _GENERATORS[key] = WordGenerator(ngens, q, seed)
    return _GENERATORS[key]


class WordEvaluator:
    """Evaluates the words of a generator in one module, caching products."""

    def __init__(self, M: Representation, gen: WordGenerator):
        self.M = M
        self.gen = gen
        self._products: list[np.ndarray] = []
        self._words: dict[int, np.ndarray] = {}

    def _product(self, j: int) -> np.ndarray:
        F = self.M.field
        while len(self._products) <= j:
            k = len(self._products)
            a, b = self.gen.products[k]
            if a < 0:
                self._products.append(self.M.mats[b])
            else:
                self._products.append(F.matmul(self._product(a), self.M.mats[b]))
        return self._products[j]

    def word(self, i: int) -> np.ndarray:
        if i not in self._words:
            F = self.M.field
            terms = self.gen.recipe(i)
            out = F.zeros((self.M.dim, self.M.dim))
            for c, j in terms:
                P = self._product(j) if j >= 0 else F.identity(self.M.dim)
                out = F.vadd(out, F.vmul(P, c) if c != 1 else P)
            self._words[i] = out
        return self._words[i]


def evaluator(M: Representation, gen: WordGenerator) -> WordEvaluator:
    """The cached evaluator of ``gen``'s words in M."""
    key = ("words", gen.ngens, gen.q, gen.seed)
    if key not in M.scratch:
        M.scratch[key] = WordEvaluator(M, gen)
    return M.scratch[key]


def word_kernel(M: Representation, gen: WordGenerator, i: int, f: tuple, generalized: bool) -> np.ndarray:
    """(Generalized) kernel of f(word i) on M, cached on the module."""
    key = ("kernel", gen.seed, i, tuple(f), generalized)
    if key not in M.scratch:
        F = M.field
        B = factor_matrix(F, np.array(f, dtype=F.dtype), evaluator(M, gen).word(i))
        M.scratch[key] = generalized_kernel(F, B) if generalized else linalg.nullspace(F, B)
    return M.scratch[key]


def factor_matrix(F: GF, f: np.ndarray, A: np.ndarray) -> np.ndarray:
    return poly.matrix_eval(F, f, A)


def generalized_kernel(F: GF, B: np.ndarray) -> np.ndarray:
    """RREF basis of the generalized nullspace of B (stable kernel of B^(2^t))."""
    n = B.shape[0]
    K = linalg.nullspace(F, B)
    while K.shape[0] and K.shape[0] < n:
        B = F.matmul(B, B)
        K2 = linalg.nullspace(F, B)
        if K2.shape[0] == K.shape[0]:
            break
        K = K2
    return K


# -- Norton's test and chopping --------------------------------------------

@dataclass(frozen=True, eq=False)
class NortonCertificate:
    """Transcript of a successful Norton irreducibility test."""

    seed: int
    word: int
    factor: tuple
    nullity: int
    witness: np.ndarray = dc_field(repr=False)
    dual_witness: np.ndarray = dc_field(repr=False)

    def replay(self, M: Representation) -> bool:
        """Re-run the certified test on M."""
        F = M.field
        if M.dim == 1:
            return True
        gen = word_generator(len(M.gens), F.q, self.seed)
        A = WordEvaluator(M, gen).word(self.word)
        f = np.array(self.factor, dtype=F.dtype)
        B = factor_matrix(F, f, A)
        if M.dim - linalg.rank(F, B) != self.nullity or self.nullity != len(f) - 1:
            return False
        if F.matmul(self.witness[None, :], B).any():
            return False
        if F.matmul(self.dual_witness[None, :], B.T.copy()).any():
            return False
        full = linalg.spin(F, self.witness, M.mats)[0].shape[0] == M.dim
        tmats = [a.T.copy() for a in M.mats]
        dual_full = linalg.spin(F, self.dual_witness, tmats)[0].shape[0] == M.dim
        return full and dual_full


TRIVIAL_CERT = NortonCertificate(DEFAULT_SEED, -1, (), 1, np.ones(1, dtype=np.uint8), np.ones(1, dtype=np.uint8))


@dataclass
class SplitResult:
    """Either a proper submodule (RREF basis) or a certificate."""

    submodule: tuple | None = None
    certificate: NortonCertificate | None = None
    words_used: int = 0


def norton(M: Representation, seed: int = DEFAULT_SEED, budget: int = WORD_BUDGET,
           max_factor_degree: int = 8) -> SplitResult:
    """Find a proper submodule of M or certify M irreducible."""
    F = M.field
    n = M.dim
    if n == 1:
        cert = NortonCertificate(seed, -1, (), 1, F.identity(1)[0], F.identity(1)[0])
        return SplitResult(certificate=cert)
    gen = word_generator(len(M.gens), F.q, seed)
    ev = WordEvaluator(M, gen)
    tmats = None
    for i in range(budget):
        A = ev.word(i)
        facs = poly.factor(F, charpoly_array(F, A), seed=seed + i, max_degree=max_factor_degree)
        facs.sort(key=lambda fm: (len(fm[0]), fm[1]))
        for f, mult in facs[:4]:
            d = len(f) - 1
            B = factor_matrix(F, f, A)
            K = linalg.nullspace(F, B)
            v = K[0]
            ech, piv = linalg.spin(F, v, M.mats)
            if len(piv) < n:
                return SplitResult(submodule=(ech, piv), words_used=i + 1)
            if K.shape[0] != d:
                continue
            Bt = B.T.copy()
            Kt = linalg.nullspace(F, Bt)
            w = Kt[0]
            if tmats is None:
                tmats = [a.T.copy() for a in M.mats]
            tech, tpiv = linalg.spin(F, w, tmats)
            if len(tpiv) < n:
                sub = annihilator(F, tech, n)
                return SplitResult(submodule=sub, words_used=i + 1)
            cert = NortonCertificate(seed, i, poly.to_tuple(f), d, v.copy(), w.copy())
            return SplitResult(certificate=cert, words_used=i + 1)
    raise ResourceCapExceeded(f"no split or certificate for a {n}-dim module within {budget} words")


@dataclass
class CompositionData:
    """Composition factors of a module (simple id -> multiplicity)."""

    multiplicities: dict
    dims: dict

    @property
    def total_dim(self) -> int:
        return sum(m * self.dims[s] for s, m in self.multiplicities.items())

    def as_list(self) -> list[tuple[str, int]]:
        return sorted(self.multiplicities.items(), key=lambda sm: _label_key(sm[0]))


def _label_key(label: str):
    digits = "".join(ch for ch in label if ch.isdigit())
    return (int(digits) if digits else 0, label)


def chop(M: Representation, catalog: "SimpleCatalog", seed: int = DEFAULT_SEED,
         budget: int = WORD_BUDGET) -> CompositionData:
    """Composition factors of M, registering new simples in the catalog."""
    mult: dict[str, int] = {}
    stack = [M]
    while stack:
        X = stack.pop()
        if X.dim == 0:
            continue
        res = norton(X, seed=seed, budget=budget)
        if res.submodule is not None:
            ech, piv = res.submodule
            stack.append(quotient_action(X, ech, piv))
            stack.append(sub_action(X, ech, piv))
            continue
        sid = catalog.identify(X, res.certificate)
        mult[sid] = mult.get(sid, 0) + 1
    out = CompositionData(mult, {s: catalog[s].dim for s in mult})
    if out.total_dim != M.dim:
        raise AssertionError("chop lost dimension")
    return out


# -- standard bases and isomorphism ------------------------------------------

def standard_basis(F: GF, mats, v: np.ndarray) -> np.ndarray | None:
    """Rows v, then images b_i g_j in a fixed order, kept when new."""
    n = v.shape[0]
    space = linalg.EchelonSpace(F, n)
    space.add(v[None, :])
    basis = [v]
    i = 0
    while i < len(basis) and len(basis) < n:
        for a in mats:
            x = F.matmul(basis[i][None, :], a)
            if not space.contains(x):
                space.add(x)
                basis.append(x[0])
                if len(basis) == n:
                    break
        i += 1
    if len(basis) < n:
        return None
    return np.array(basis, dtype=F.dtype)


def standard_form(F: GF, mats, v: np.ndarray):
    B = standard_basis(F, mats, v)
    if B is None:
        return None, None
    Binv = linalg.inverse(F, B)
    return B, [F.matmul(F.matmul(B, a), Binv) for a in mats]


def projective_points(F: GF, K: np.ndarray, limit: int = 5000):
    """Vectors of the row space of K, one per 1-dim subspace."""
    d = K.shape[0]
    count = (F.q**d - 1) // (F.q - 1)
    if count > limit:
        raise ResourceCapExceeded(f"{count} projective points exceed the limit {limit}")
    for lead in range(d):
        for tail in itertools.product(range(F.q), repeat=d - lead - 1):
            c = np.zeros(d, dtype=F.dtype)
            c[lead] = 1
            c[lead + 1 :] = tail
            yield F.matmul(c[None, :], K)[0]


def _form_bytes(mats) -> bytes:
    return b"".join(np.ascontiguousarray(a).tobytes() for a in mats)


@dataclass(eq=False)
class CatalogEntry:
    """A simple module in standard basis."""

    id: str
    module: Representation
    certificate: NortonCertificate
    std_word: int
    std_factor: tuple
    std_nullity: int
    endo_dim: int
    fingerprint: tuple

    @property
    def dim(self) -> int:
        return self.module.dim


class SimpleCatalog:
    """Pairwise non-isomorphic simple modules of one group over one field.

    The trivial module is always the first entry.  Ids are the dimension
    followed by a letter in insertion order (``1a``, ``4a``, ``4b``...).
    """

    FINGERPRINT_WORDS = 4
    STD_WORD_SEARCH = 24

    def __init__(self, group, field: GF, seed: int = DEFAULT_SEED):
        self.group = group
        self.field = field
        self.seed = seed
        self.words = word_generator(len(group.generators), field.q, seed)
        self.entries: list[CatalogEntry] = []
        self._dual: dict[str, str] = {}
        self._peak: dict = {}
        self._charpolys: dict[tuple[str, int], list] = {}
        self.identify(trivial(group, field), TRIVIAL_CERT)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, sid: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == sid:
                return e
        raise KeyError(sid)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    @property
    def trivial_id(self) -> str:
        return self.entries[0].id

    @property
    def splitting(self) -> bool:
        return all(e.endo_dim == 1 for e in self.entries)

    def fingerprint(self, S: Representation) -> tuple:
        ev = evaluator(S, self.words)
        F = self.field
        parts = [S.dim]
        for i in range(self.FINGERPRINT_WORDS):
            parts.append(poly.to_tuple(charpoly_array(F, ev.word(i))))
        return tuple(parts)

    def _choose_std_word(self, S: Representation):
        """First word with a charpoly factor of minimal kernel dimension."""
        F = self.field
        ev = evaluator(S, self.words)
        best = None
        for i in range(self.STD_WORD_SEARCH):
            A = ev.word(i)
            for f, _ in poly.factor(F, charpoly_array(F, A), seed=self.seed + i):
                K = linalg.nullspace(F, factor_matrix(F, f, A))
                if best is None or K.shape[0] < best[2]:
                    best = (i, poly.to_tuple(f), K.shape[0], K)
                if best[2] == 1:
                    return best
        return best

    def identify(self, S: Representation, cert: NortonCertificate | None) -> str:
        """Id of the catalog entry isomorphic to the certified simple S,
        inserting S if it is new."""
        if cert is None:
            raise NotCertified("module has no irreducibility certificate")
        fp = self.fingerprint(S)
        for e in self.entries:
            if e.fingerprint == fp and self.isomorphism(e, S) is not None:
                return e.id
        return self._insert(S, cert, fp)

    def _insert(self, S: Representation, cert: NortonCertificate, fp: tuple) -> str:
        F = self.field
        if S.dim == 1:
            std = (0, (), 1, F.identity(1))
        else:
            std = self._choose_std_word(S)
        i, f, nul, K = std
        best = None
        for v in projective_points(F, K):
            B, mats = standard_form(F, S.mats, v)
            if mats is None:
                continue
            key = _form_bytes(mats)
            if best is None or key < best[0]:
                best = (key, mats, B)
        module = from_arrays(S.group, F, best[1], "", dim=S.dim)
        if S.dim > 1:
            # move the witnesses into the standard basis: row vectors map by
            # B^-1, vectors of the transposed module by B^T
            B = best[2]
            cert = dataclasses.replace(
                cert,
                witness=F.matmul(cert.witness[None, :], linalg.inverse(F, B))[0],
                dual_witness=F.matmul(cert.dual_witness[None, :], B.T.copy())[0],
            )
        endo = len(endomorphisms_simple(module, i, f, self.seed)) if S.dim > 1 else 1
        letter = sum(1 for e in self.entries if e.dim == S.dim)
        sid = f"{S.dim}{_letters(letter)}"
        module = module.relabel(sid)
        self.entries.append(CatalogEntry(sid, module, cert, i, f, nul, endo, fp))
        self._peak.clear()
        return sid

    def isomorphism(self, entry: CatalogEntry, T: Representation) -> np.ndarray | None:
        """Intertwiner X with entry.gens[g] X = X T.gens[g], or None."""
        F = self.field
        S = entry.module
        if T.dim != S.dim or T.field != F:
            return None
        if S.dim == 1:
            same = all(np.array_equal(a, b) for a, b in zip(S.mats, T.mats))
            return F.identity(1) if same else None
        ev = evaluator(T, self.words)
        f = np.array(entry.std_factor, dtype=F.dtype)
        K = linalg.nullspace(F, factor_matrix(F, f, ev.word(entry.std_word)))
        if K.shape[0] != entry.std_nullity:
            return None
        target = _form_bytes(S.mats)
        for v in projective_points(F, K):
            B, mats = standard_form(F, T.mats, v)
            if mats is not None and _form_bytes(mats) == target:
                # S is in its own standard basis, so X = B_T.
                return B
        return None

    def is_isomorphic(self, sid: str, T: Representation) -> bool:
        return self.isomorphism(self[sid], T) is not None

    def find(self, T: Representation) -> str | None:
        """Id of an entry isomorphic to the simple module T, if any."""
        fp = self.fingerprint(T)
        for e in self.entries:
            if e.fingerprint == fp and self.isomorphism(e, T) is not None:
                return e.id
        return None

    def dual_id(self, sid: str) -> str:
        """Id of the dual of a catalog simple."""
        if sid not in self._dual:
            D = dual(self[sid].module)
            found = self.find(D)
            if found is None:
                res = norton(D, seed=self.seed)
                found = self.identify(D, res.certificate)
            self._dual[sid] = found
        return self._dual[sid]

    # -- peakwords ---------------------------------------------------------

    def _charpoly_factors(self, sid: str, i: int) -> list:
        key = (sid, i)
        if key not in self._charpolys:
            e = self[sid]
            A = evaluator(e.module, self.words).word(i)
            F = self.field
            self._charpolys[key] = [
                (poly.to_tuple(f), m) for f, m in poly.factor(F, charpoly_array(F, A), seed=self.seed + i)
            ]
        return self._charpolys[key]

    def peakword(self, sid: str, budget: int = WORD_BUDGET) -> tuple[int, tuple]:
        """(word, factor) whose generalized kernel on ``sid`` has dimension
        ``endo_dim`` and which acts invertibly on every other entry."""
        key = (sid, len(self.entries))
        if key not in self._peak:
            self._peak[key] = self._search_peakword(sid, budget)
        found, weak = self._peak[key]
        if found is None:
            raise ResourceCapExceeded(f"no peakword for {sid} within {budget} words")
        return found

    def weak_peakword(self, sid: str, budget: int = WORD_BUDGET) -> tuple[int, tuple, int]:
        """(word, factor, multiple): the factor acts invertibly on every
        other entry and its generalized kernel on ``sid`` has dimension
        ``multiple * endo_dim``, with the multiple as small as found."""
        key = (sid, len(self.entries))
        if key not in self._peak:
            self._peak[key] = self._search_peakword(sid, budget)
        found, weak = self._peak[key]
        if found is not None:
            return found + (1,)
        if weak is None:
            raise ResourceCapExceeded(f"no separating word for {sid} within {budget} words")
        return weak

    def _search_peakword(self, sid: str, budget: int):
        e = self[sid]
        others = [x.id for x in self.entries if x.id != sid]
        weak = None
        for i in range(budget):
            for f, m in self._charpoly_factors(sid, i):
                if any(f == g for o in others for g, _ in self._charpoly_factors(o, i)):
                    continue
                size = (len(f) - 1) * m
                if size == e.endo_dim:
                    return (i, f), None
                if size % e.endo_dim == 0 and (weak is None or size // e.endo_dim < weak[2]):
                    weak = (i, f, size // e.endo_dim)
        return None, weak

    def peak_kernel(self, sid: str, M: Representation, generalized: bool = True) -> np.ndarray:
        """Generalized kernel (or kernel) of the peakword of ``sid`` on M."""
        i, f = self.peakword(sid)
        return word_kernel(M, self.words, i, f, generalized)

    def weak_peak_kernel(self, sid: str, M: Representation) -> tuple[np.ndarray, int]:
        """Generalized kernel on M of the weak peakword of ``sid``, and its multiple."""
        i, f, mult = self.weak_peakword(sid)
        return word_kernel(M, self.words, i, f, True), mult

    def std_kernel(self, sid: str, M: Representation) -> np.ndarray:
        """Kernel on M of the standard word of ``sid``; contains the image
        of the standard vector under every map from the simple to M."""
        e = self[sid]
        F = self.field
        if e.dim == 1:
            # k-type 1-dim simple: fixed vectors of the character
            eye = F.identity(M.dim)
            stacked = np.hstack([F.vsub(a, F.vmul(eye, int(s[0, 0]))) for a, s in zip(M.mats, e.module.mats)])
            return linalg.nullspace(F, stacked)
        return word_kernel(M, self.words, e.std_word, e.std_factor, False)

    def std_vector(self, sid: str) -> np.ndarray:
        """The standard vector: first basis vector of the standard basis."""
        e = self[sid]
        v = self.field.zeros(e.dim)
        v[0] = 1
        return v


def _letters(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def endomorphisms_simple(S: Representation, word: int, factor: tuple, seed: int = DEFAULT_SEED) -> list:
    """Basis of End(S) for a simple S whose standard vector is e_0 and which
    is killed by factor(word)."""
    F = S.field
    gen = word_generator(len(S.gens), F.q, seed)
    K = linalg.nullspace(F, factor_matrix(F, np.array(factor, dtype=F.dtype), WordEvaluator(S, gen).word(word)))
    v = F.zeros(S.dim)
    v[0] = 1
    return solve_homs(F, S.mats, S.mats, v[None, :], [K])


def endo_dim(S: Representation, seed: int = DEFAULT_SEED) -> int:
    """dim End_kG(S) for an irreducible S (certified by Norton's test)."""
    res = norton(S, seed=seed)
    if res.certificate is None:
        raise NotCertified("module is reducible")
    if S.dim == 1:
        return 1
    cert = res.certificate
    F = S.field
    gen = word_generator(len(S.gens), F.q, seed)
    B = factor_matrix(F, np.array(cert.factor, dtype=F.dtype), WordEvaluator(S, gen).word(cert.word))
    K = linalg.nullspace(F, B)
    return len(solve_homs(F, S.mats, S.mats, cert.witness[None, :], [K]))


def is_isomorphic(S: Representation, T: Representation, seed: int = DEFAULT_SEED):
    """(True, X) with X.g_T = g_S.X when the certified simples S, T are
    isomorphic, else (False, None)."""
    rs, rt = norton(S, seed=seed), norton(T, seed=seed)
    if rs.certificate is None or rt.certificate is None:
        raise NotCertified("is_isomorphic needs irreducible modules")
    if S.dim != T.dim or S.field != T.field:
        return False, None
    cat = SimpleCatalog(S.group, S.field, seed)
    sid = cat.identify(S, rs.certificate)
    entry = cat[sid]
    XS = cat.isomorphism(entry, S)  # entry -> S
    XT = cat.isomorphism(entry, T)  # entry -> T
    if XT is None:
        return False, None
    F = S.field
    # entry.g XS = XS S.g and entry.g XT = XT T.g give S.g (XS^-1 XT) = (XS^-1 XT) T.g
    X = F.matmul(linalg.inverse(F, XS), XT)
    return True, X
