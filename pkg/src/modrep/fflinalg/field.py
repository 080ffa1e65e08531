"""Finite fields GF(p^k) with vectorised element kernels.

Elements are encoded as integers ``0 .. q-1``.  For prime fields the
encoding is the residue itself; for extension fields the integer
``sum(c_i * p**i)`` encodes the polynomial ``sum(c_i x**i)`` modulo the
field's defining polynomial.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Conway polynomials, coefficients low-to-high.
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}

MAX_ORDER = 1 << 16


class FieldError(ArithmeticError):
    """Raised for invalid field data or undefined field operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# Small helpers for polynomials over the prime field, used only while
# building extension-field tables (the general machinery lives in poly.py).

def _pp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(_pp_trim(a)) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _pp_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_mod(out, m, p)


def _pp_powmod(a, e, m, p):
    result, base = [1], _pp_mod(a, m, p)
    while e:
        if e & 1:
            result = _pp_mulmod(result, base, m, p)
        base = _pp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _pp_gcd(a, b, p):
    a, b = _pp_trim(list(a)), _pp_trim(list(b))
    while b:
        a, b = b, _pp_trim(_pp_mod(a, b, p))
    return a


def _pp_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Rabin's test: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1."""
    k = len(f) - 1
    m = list(f)
    x = [0, 1]

    def frob_power(e):
        r = x
        for _ in range(e):
            r = _pp_powmod(r, p, m, p)
        return r

    full = _pp_trim(list(frob_power(k)))
    if full != [0, 1] and not (k == 1 and full == _pp_trim(_pp_mod(x, m, p))):
        return False
    for r in _prime_factors(k):
        h = list(frob_power(k // r)) + [0, 0]
        h[1] = (h[1] - 1) % p
        g = _pp_gcd(m, h, p)
        if len(g) > 1:
            return False
    return True


class GF:
    """The finite field GF(p**deg).

    Parameters
    ----------
    p : int
        Prime characteristic.
    deg : int
        Extension degree, at least 1.
    minpoly : sequence of int, optional
        Monic irreducible polynomial over GF(p), coefficients low-to-high.
        Defaults to the Conway polynomial when one is shipped.
    """

    def __init__(self, p: int, deg: int = 1, minpoly=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if deg < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**deg
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds {MAX_ORDER}")
        self.p = p
        self.deg = deg
        self.q = q
        if deg == 1:
            self.minpoly = (0, 1)
        else:
            if minpoly is None:
                if (p, deg) not in CONWAY:
                    raise FieldError(f"no default polynomial for GF({p}^{deg})")
                minpoly = CONWAY[(p, deg)]
            minpoly = tuple(int(c) % p for c in minpoly)
            if len(minpoly) != deg + 1 or minpoly[-1] != 1:
                raise FieldError("minpoly must be monic of degree deg")
            if not _pp_is_irreducible(minpoly, p):
                raise FieldError(f"minpoly {minpoly} is reducible over GF({p})")
            self.minpoly = minpoly
        self.dtype = np.uint8 if q <= 256 else np.uint16
        self._build_tables()

    # -- construction -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.deg)]

    def _encode(self, digits) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def _poly_mul_elem(self, a: int, b: int) -> int:
        prod = _pp_mulmod(self._digits(a), self._digits(b), list(self.minpoly), self.p)
        return self._encode(prod)

    def _build_tables(self):
        p, q = self.p, self.q
        idx = np.arange(q, dtype=np.int64)
        if self.deg == 1:
            self.neg_table = ((-idx) % p).astype(self.dtype)
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = [pow(int(a), p - 2, p) for a in range(1, q)]
            self.inv_table = inv.astype(self.dtype)
            self.primitive = self._find_primitive_prime()
            self._exp = np.zeros(q - 1, dtype=np.int64)
            acc = 1
            for i in range(q - 1):
                self._exp[i] = acc
                acc = acc * self.primitive % p
        else:
            digits = np.array([self._digits(a) for a in range(q)], dtype=np.int64)
            self._digit_table = digits
            self._powers = p ** np.arange(self.deg, dtype=np.int64)
            self.neg_table = ((-digits) % p @ self._powers).astype(self.dtype)
            self.primitive = self._find_primitive_ext()
            self._exp = np.zeros(q - 1, dtype=np.int64)
            acc = 1
            for i in range(q - 1):
                self._exp[i] = acc
                acc = self._poly_mul_elem(acc, self.primitive)
        self._log = np.full(q, -1, dtype=np.int64)
        self._log[self._exp] = np.arange(q - 1)
        # Zech logarithms: exp(zech[n]) = 1 + exp(n); -1 marks 1 + exp(n) = 0.
        one_plus = self._add_scalar_digits(self._exp, 1)
        self._zech = np.where(one_plus == 0, -1, self._log[one_plus])
        if self.deg > 1:
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = self._exp[(-self._log[1:]) % (q - 1)]
            self.inv_table = inv.astype(self.dtype)
        if q <= 256:
            a = np.repeat(idx, q)
            b = np.tile(idx, q)
            self.add_table = self._add_zech(a, b).reshape(q, q).astype(self.dtype)
            self.mul_table = self._mul_log(a, b).reshape(q, q).astype(self.dtype)
        else:
            self.add_table = self.mul_table = None

    def _add_scalar_digits(self, a, c):
        if self.deg == 1:
            return (a + c) % self.p
        d = self._digit_table[a]
        d = d.copy()
        d[..., 0] = (d[..., 0] + c) % self.p
        return d @ self._powers

    def _find_primitive_prime(self) -> int:
        if self.q == 2:
            return 1
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(pow(g, (self.q - 1) // f, self.p) != 1 for f in factors):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _find_primitive_ext(self) -> int:
        factors = _prime_factors(self.q - 1)
        for g in range(self.p, self.q):
            ok = True
            for f in factors:
                e, r, base = (self.q - 1) // f, 1, g
                while e:
                    if e & 1:
                        r = self._poly_mul_elem(r, base)
                    base = self._poly_mul_elem(base, base)
                    e >>= 1
                if r == 1:
                    ok = False
                    break
            if ok:
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        s = (self._log[a] + self._log[b]) % (self.q - 1)
        return np.where(zero, 0, self._exp[s])

    def _add_zech(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self._log[a], self._log[b]
        diff = (lb - la) % (self.q - 1)
        z = self._zech[diff]
        res = np.where(z < 0, 0, self._exp[(la + np.maximum(z, 0)) % (self.q - 1)])
        res = np.where(a == 0, b, res)
        return np.where(b == 0, a, res)

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.deg, self.minpoly) == (
            other.p,
            other.deg,
            other.minpoly,
        )

    def __hash__(self):
        return hash((self.p, self.deg, self.minpoly))

    def __repr__(self):
        if self.deg == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.deg})"

    def __reduce__(self):
        return (GF, (self.p, self.deg, self.minpoly if self.deg > 1 else None))

    @property
    def is_prime(self) -> bool:
        return self.deg == 1

    # -- scalar arithmetic --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        return int(self._add_zech(a, b))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self.neg_table[b]))

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        return int(self._mul_log(a, b))

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise FieldError("inversion of zero")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)

    # -- array arithmetic ---------------------------------------------

    def asarray(self, a) -> np.ndarray:
        arr = np.asarray(a)
        if arr.dtype != self.dtype:
            arr = arr.astype(self.dtype)
        return arr

    def reduce_ints(self, a) -> np.ndarray:
        """Map integers to prime-field elements (prime fields only)."""
        if not self.is_prime:
            raise FieldError("integer reduction only defined for prime fields")
        return np.mod(a, self.p).astype(self.dtype)

    def vadd(self, a, b) -> np.ndarray:
        if self.p == 2 and self.is_prime:
            return np.bitwise_xor(a, b).astype(self.dtype, copy=False)
        if self.is_prime:
            return ((a.astype(np.int32) + b) % self.p).astype(self.dtype)
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._add_zech(a, b).astype(self.dtype)

    def vneg(self, a) -> np.ndarray:
        return self.neg_table[a]

    def vsub(self, a, b) -> np.ndarray:
        if self.p == 2:
            return self.vadd(a, b)
        if self.is_prime:
            return ((a.astype(np.int32) - b) % self.p).astype(self.dtype)
        return self.vadd(a, self.neg_table[b])

    def vmul(self, a, b) -> np.ndarray:
        """Elementwise (broadcasting) product."""
        if self.is_prime:
            return ((np.asarray(a, dtype=np.int32) * b) % self.p).astype(self.dtype)
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self._mul_log(a, b).astype(self.dtype)

    def vinv(self, a) -> np.ndarray:
        if np.any(np.asarray(a) == 0):
            raise FieldError("inversion of zero")
        return self.inv_table[a]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product with exact reduction."""
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.is_prime:
            return _prime_matmul(a, b, self.p).astype(self.dtype)
        return self._ext_matmul(a, b)

    def _planes(self, a: np.ndarray) -> np.ndarray:
        return np.moveaxis(self._digit_table[a], -1, 0)

    def _ext_matmul(self, a, b):
        k, p = self.deg, self.p
        pa, pb = self._planes(a), self._planes(b)
        acc = np.zeros((2 * k - 1, a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                acc[i + j] += _prime_matmul(pa[i], pb[j], p)
        acc %= p
        mp = self.minpoly
        for top in range(2 * k - 2, k - 1, -1):
            c = acc[top]
            if c.any():
                for i in range(k):
                    if mp[i]:
                        acc[top - k + i] = (acc[top - k + i] - c * mp[i]) % p
            acc[top] = 0
        out = np.zeros(acc.shape[1:], dtype=np.int64)
        for i in range(k - 1, -1, -1):
            out = out * p + acc[i]
        return out.astype(self.dtype)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=self.dtype)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.q, size=shape).astype(self.dtype)


def _prime_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[1]
    bound = n * (p - 1) ** 2
    if bound < (1 << 24):
        r = a.astype(np.float32) @ b.astype(np.float32)
    elif bound < (1 << 53):
        r = a.astype(np.float64) @ b.astype(np.float64)
    else:  # pragma: no cover - beyond any shipped size
        r = a.astype(object) @ b.astype(object)
    return np.mod(r, p).astype(np.int64)


@lru_cache(maxsize=None)
def field(p: int, deg: int = 1, minpoly: tuple | None = None) -> GF:
    """Cached field constructor."""
    return GF(p, deg, minpoly)


def field_from_order(q: int) -> GF:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return field(p, k)
    raise FieldError(f"{q} is not a prime power")
