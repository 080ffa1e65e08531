"""Univariate polynomials over GF(q) and their factorisation.

A polynomial is a 1-d array of encoded field elements, coefficients
low-to-high, with no trailing zeros (the zero polynomial is empty).
"""

from __future__ import annotations

import numpy as np

from .field import GF


def trim(a) -> np.ndarray:
    a = np.asarray(a)
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def poly(F: GF, coeffs) -> np.ndarray:
    return trim(np.asarray(coeffs, dtype=F.dtype))


def degree(a) -> int:
    return len(a) - 1


def add(F: GF, a, b) -> np.ndarray:
    n = max(len(a), len(b))
    x = np.zeros(n, dtype=F.dtype)
    y = np.zeros(n, dtype=F.dtype)
    x[: len(a)] = a
    y[: len(b)] = b
    return trim(F.vadd(x, y))


def sub(F: GF, a, b) -> np.ndarray:
    return add(F, a, F.vneg(np.asarray(b, dtype=F.dtype)))


def scale(F: GF, a, c: int) -> np.ndarray:
    return trim(F.vmul(np.asarray(a, dtype=F.dtype), c))


def mul(F: GF, a, b) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=F.dtype)
    if F.is_prime:
        r = np.convolve(a.astype(np.int64), b.astype(np.int64)) % F.p
        return trim(r.astype(F.dtype))
    out = np.zeros(len(a) + len(b) - 1, dtype=F.dtype)
    for i, ai in enumerate(a):
        if ai:
            out[i : i + len(b)] = F.vadd(out[i : i + len(b)], F.vmul(b, int(ai)))
    return trim(out)


def divmod_(F: GF, a, b) -> tuple[np.ndarray, np.ndarray]:
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = np.array(a, dtype=F.dtype)
    db = len(b) - 1
    if len(a) - 1 < db:
        return np.zeros(0, dtype=F.dtype), trim(a)
    inv_lead = F.inv(int(b[-1]))
    q = np.zeros(len(a) - db, dtype=F.dtype)
    if F.is_prime:
        p = F.p
        r = a.astype(np.int64)
        bb = b.astype(np.int64)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] * inv_lead % p
            if c:
                q[i - db] = c
                r[i - db : i + 1] = (r[i - db : i + 1] - c * bb) % p
        return trim(q), trim(r[:db].astype(F.dtype))
    r = a
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul(int(r[i]), inv_lead)
        if c:
            q[i - db] = c
            r[i - db : i + 1] = F.vsub(r[i - db : i + 1], F.vmul(b, c))
    return trim(q), trim(r[:db])


def mod(F: GF, a, b) -> np.ndarray:
    return divmod_(F, a, b)[1]


def monic(F: GF, a) -> np.ndarray:
    if len(a) == 0:
        return a
    return scale(F, a, F.inv(int(a[-1])))


def gcd(F: GF, a, b) -> np.ndarray:
    a, b = trim(a), trim(b)
    while len(b):
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F: GF, a, e: int, m) -> np.ndarray:
    result = poly(F, [1])
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def derivative(F: GF, a) -> np.ndarray:
    if len(a) <= 1:
        return np.zeros(0, dtype=F.dtype)
    ks = np.arange(1, len(a)) % F.p
    # multiply coefficient by the integer k (an element of the prime field)
    out = np.array([F.mul(int(c), int(k)) if k else 0 for c, k in zip(a[1:], ks)], dtype=F.dtype)
    return trim(out)


def evaluate(F: GF, a, x: int) -> int:
    acc = 0
    for c in a[::-1]:
        acc = F.add(F.mul(acc, x), int(c))
    return acc


def pth_root(F: GF, a) -> np.ndarray:
    """The polynomial b with b**p = a, for a with derivative zero."""
    p = F.p
    coeffs = a[::p]
    # invert the Frobenius on coefficients: c -> c^(q/p)
    e = F.q // p
    return trim(np.array([F.pow(int(c), e) for c in coeffs], dtype=F.dtype))


def squarefree_decomposition(F: GF, f) -> list[tuple[np.ndarray, int]]:
    """Monic squarefree factors with multiplicities (Yun-style, char p)."""
    f = monic(F, f)
    if degree(f) < 1:
        return []
    out: list[tuple[np.ndarray, int]] = []
    i = 1
    df = derivative(F, f)
    if len(df) == 0:
        return [(g, m * F.p) for g, m in squarefree_decomposition(F, pth_root(F, f))]
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    while degree(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if degree(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if degree(c) > 0:
        for g, m in squarefree_decomposition(F, pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def distinct_degree(F: GF, f, max_degree: int | None = None) -> list[tuple[np.ndarray, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    x = poly(F, [0, 1])
    h = x.copy()
    d = 0
    f = monic(F, f)
    while degree(f) >= 2 * (d + 1):
        d += 1
        if max_degree is not None and d > max_degree:
            return out
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if degree(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
    if degree(f) > 0 and (max_degree is None or degree(f) <= max_degree):
        out.append((f, degree(f)))
    return out


def equal_degree(F: GF, f, d: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    f = monic(F, f)
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = poly(F, F.random(n, rng))
        if degree(a) < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1))
            t = a.copy()
            s = a.copy()
            for _ in range(F.deg * d - 1):
                t = mod(F, mul(F, t, t), f)
                s = add(F, s, t)
            g = gcd(F, f, s)
        else:
            e = (F.q**d - 1) // 2
            b = powmod(F, a, e, f)
            g = gcd(F, f, sub(F, b, poly(F, [1])))
        if 0 < degree(g) < n:
            return equal_degree(F, g, d, rng) + equal_degree(F, divmod_(F, f, g)[0], d, rng)


def _key(a) -> tuple:
    return (len(a), tuple(int(c) for c in a[::-1]))


def factor(F: GF, f, seed: int = 0, max_degree: int | None = None) -> list[tuple[np.ndarray, int]]:
    """Irreducible factorisation of ``f`` as (monic factor, multiplicity) pairs.

    With ``max_degree`` only factors up to that degree are returned.
    """
    rng = np.random.default_rng(seed)
    out: dict[tuple, list] = {}
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g, max_degree):
            for irr in equal_degree(F, h, d, rng):
                k = _key(irr)
                if k in out:
                    out[k][1] += m
                else:
                    out[k] = [irr, m]
    return [(v[0], v[1]) for k, v in sorted(out.items())]


def is_irreducible(F: GF, f) -> bool:
    """Certificate: x^(q^d) = x mod f holds at d = deg f, and
    gcd(x^(q^d) - x, f) = 1 for every d < deg f."""
    f = monic(F, f)
    n = degree(f)
    if n < 1:
        return False
    x = mod(F, poly(F, [0, 1]), f)
    h = x.copy()
    for d in range(1, n + 1):
        h = powmod(F, h, F.q, f)
        diff = sub(F, h, x)
        if d < n and degree(gcd(F, f, diff)) > 0:
            return False
    return len(diff) == 0


def matrix_eval(F: GF, f, A: np.ndarray) -> np.ndarray:
    """f(A) by Horner's rule."""
    n = A.shape[0]
    out = F.zeros((n, n))
    eye = F.identity(n)
    for c in f[::-1]:
        out = F.matmul(out, A) if out.any() else out
        if c:
            out = F.vadd(out, F.vmul(eye, int(c)))
    return out


def to_tuple(a) -> tuple[int, ...]:
    return tuple(int(c) for c in a)
