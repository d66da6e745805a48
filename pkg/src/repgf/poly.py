"""Univariate polynomials over GF(q) and their factorization.

A polynomial is a little-endian int64 array of field codes with no
trailing zeros; the zero polynomial is the empty array.  Factorization
is squarefree decomposition, distinct-degree splitting, then
Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.
"""

from __future__ import annotations

import random

import numpy as np

from .fields import FieldSpec

__all__ = [
    "PolyGF",
    "trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_monic",
    "poly_powmod",
    "poly_eval_matrix",
    "factor_poly",
]


def trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.flatnonzero(f)
    return f[: nz[-1] + 1].copy() if len(nz) else f[:0].copy()


def deg(f) -> int:
    return len(f) - 1


def poly_add(F: FieldSpec, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def poly_sub(F: FieldSpec, f, g):
    return poly_add(F, f, F.neg(np.asarray(g, dtype=np.int64)))


def poly_mul(F: FieldSpec, f, g):
    return trim(F.convolve(f, g))


def poly_scale(F: FieldSpec, c: int, f):
    return trim(F.mul(c, np.asarray(f, dtype=np.int64)))


def poly_monic(F: FieldSpec, f):
    f = trim(f)
    if len(f) == 0:
        return f
    return poly_scale(F, F.sinv(int(f[-1])), f)


def poly_divmod(F: FieldSpec, f, g):
    f, g = trim(f), trim(g)
    if len(g) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return np.zeros(0, dtype=np.int64), f
    r = f.copy()
    inv_lead = F.sinv(int(g[-1]))
    dq = len(f) - len(g)
    quot = np.zeros(dq + 1, dtype=np.int64)
    for i in range(dq, -1, -1):
        c = F.smul(int(r[i + len(g) - 1]), inv_lead)
        quot[i] = c
        if c:
            r[i : i + len(g)] = F.sub(r[i : i + len(g)], F.mul(c, g))
    return trim(quot), trim(r[: len(g) - 1])


def poly_mod(F: FieldSpec, f, g):
    return poly_divmod(F, f, g)[1]


def poly_gcd(F: FieldSpec, f, g):
    f, g = trim(f), trim(g)
    while len(g):
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


class _Modulus:
    """Reduction modulo a fixed monic f through a precomputed matrix."""

    def __init__(self, F: FieldSpec, f):
        self.F = F
        self.f = poly_monic(F, f)
        n = deg(self.f)
        self.n = n
        rows = np.zeros((max(n - 1, 0), n), dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        if n:
            cur[-1] = 1
        for i in range(n - 1):
            # cur = x^(n-1+i) mod f  ->  x^(n+i) mod f
            top = int(cur[-1])
            shifted = np.concatenate([[0], cur[:-1]])
            cur = F.sub(shifted, F.mul(top, self.f[:n]))
            rows[i] = cur
        self.rows = rows

    def reduce(self, g):
        g = np.asarray(g, dtype=np.int64)
        n = self.n
        if len(g) <= n:
            return trim(g)
        low = np.zeros(n, dtype=np.int64)
        low[: min(n, len(g))] = g[:n]
        high = g[n:]
        if len(high) > len(self.rows):
            return poly_mod(self.F, g, self.f)
        return trim(self.F.add(low, self.F.matmul(high[None, :], self.rows[: len(high)])[0]))

    def mulmod(self, a, b):
        if len(a) == 0 or len(b) == 0:
            return np.zeros(0, dtype=np.int64)
        return self.reduce(self.F.convolve(a, b))

    def powmod(self, a, e: int):
        result = np.array([1], dtype=np.int64)
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            e >>= 1
            if e:
                base = self.mulmod(base, base)
        return result


def poly_powmod(F: FieldSpec, a, e: int, f):
    return _Modulus(F, f).powmod(a, e)


def poly_derivative(F: FieldSpec, f):
    f = trim(f)
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    ks = np.arange(1, len(f)) % F.p
    return trim(F.mul(ks, f[1:]))


def _pth_root(F: FieldSpec, f):
    # f = g(x^p); coefficients need c -> c^(q/p)
    f = trim(f)
    g = f[:: F.p]
    return trim(F.pow(g, F.q // F.p))


def _squarefree(F: FieldSpec, f):
    out = []
    c = poly_gcd(F, f, poly_derivative(F, f))
    w = poly_divmod(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = poly_gcd(F, w, c)
        fac = poly_divmod(F, w, y)[0]
        if deg(fac) > 0:
            out.append((poly_monic(F, fac), i))
        w = y
        c = poly_divmod(F, c, y)[0]
        i += 1
    if deg(c) > 0:
        for g, m in _squarefree(F, _pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def _distinct_degree(F: FieldSpec, f):
    out = []
    x = np.array([0, 1], dtype=np.int64)
    i = 1
    mod = _Modulus(F, f)
    h = mod.reduce(x)
    while deg(f) >= 2 * i:
        h = mod.powmod(h, F.q)
        g = poly_gcd(F, f, poly_sub(F, h, x))
        if deg(g) > 0:
            out.append((g, i))
            f = poly_divmod(F, f, g)[0]
            mod = _Modulus(F, f)
            h = mod.reduce(h)
        i += 1
    if deg(f) > 0:
        out.append((poly_monic(F, f), deg(f)))
    return out


def _equal_degree(F: FieldSpec, f, d: int, rng: random.Random):
    n = deg(f)
    if n == d:
        return [f]
    mod = _Modulus(F, f)
    while True:
        a = trim(np.array([rng.randrange(F.q) for _ in range(n)], dtype=np.int64))
        if deg(a) < 1:
            continue
        if F.p == 2:
            # absolute trace map into GF(2)
            t = a
            acc = a
            for _ in range(F.k * d - 1):
                t = mod.mulmod(t, t)
                acc = poly_add(F, acc, t)
            b = acc
        else:
            b = poly_sub(F, mod.powmod(a, (F.q**d - 1) // 2), [1])
        g = poly_gcd(F, f, b)
        if 0 < deg(g) < n:
            return _equal_degree(F, g, d, rng) + _equal_degree(F, poly_divmod(F, f, g)[0], d, rng)


def _key(f):
    return (len(f), tuple(int(c) for c in f[::-1]))


def factor_poly(F: FieldSpec, f, seed: int = 0):
    """Factor f into monic irreducibles.

    Returns a list of (factor, multiplicity) sorted by degree and then
    coefficients; the product of the factors is monic(f).
    """
    f = trim(f)
    if len(f) == 0:
        raise ValueError("cannot factor the zero polynomial")
    if deg(f) == 0:
        return []
    rng = random.Random(seed)
    counts = {}
    for part, mult in _squarefree(F, poly_monic(F, f)):
        for block, d in _distinct_degree(F, part):
            for g in _equal_degree(F, block, d, rng):
                key = _key(g)
                counts[key] = (g, counts.get(key, (g, 0))[1] + mult)
    return [counts[k] for k in sorted(counts)]


def poly_eval_matrix(F: FieldSpec, f, M):
    """f(M) by Horner's rule."""
    n = M.shape[0]
    f = trim(f)
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in f[::-1]:
        out = F.add(F.matmul(out, M), F.mul(int(c), eye))
    return out


class PolyGF:
    """A polynomial bundled with its field, for callers that want an object."""

    def __init__(self, field: FieldSpec, coeffs):
        """coeffs are field values: ints (prime subfield) or coefficient lists."""
        self.field = field
        self.coeffs = trim(np.array([field.decode(c) for c in coeffs], dtype=np.int64))

    @classmethod
    def from_codes(cls, field: FieldSpec, codes):
        out = cls.__new__(cls)
        out.field = field
        out.coeffs = trim(codes)
        return out

    @property
    def degree(self) -> int:
        return deg(self.coeffs)

    def __mul__(self, other):
        return PolyGF.from_codes(self.field, poly_mul(self.field, self.coeffs, other.coeffs))

    def __eq__(self, other):
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def factor(self, seed: int = 0):
        return [(PolyGF.from_codes(self.field, g), m) for g, m in factor_poly(self.field, self.coeffs, seed)]

    def __repr__(self):
        return f"PolyGF({[self.field.encode(c) for c in self.coeffs]})"
