"""Finite fields GF(p^k).

An element c_0 + c_1*a + ... + c_{k-1}*a^(k-1), with a a root of the
defining polynomial, is stored as the integer code
c_0 + c_1*p + ... + c_{k-1}*p^(k-1).  For k = 1 the code is just the
residue.  The vectorized methods of FieldSpec accept and return numpy
int64 arrays of codes; FieldElement wraps a single code for scalar use.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

from .errors import ValidationError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "make_field",
    "field_arith",
    "multiplicative_order",
    "elements_of_order_dividing",
    "roots_of_unity",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13):
        if n % d == 0:
            return n == d
    d = 17
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Dense polynomials over GF(p) as little-endian int lists, used only to
# validate the defining polynomial before any table exists.

def _ptrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    f = _ptrim(f)
    g = _ptrim(g)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _ptrim(f)
    return f


def _pmulmod(f, g, m, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _pmod(out, m, p)


def _pgcd(f, g, p):
    f, g = _ptrim(f), _ptrim(g)
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _xpow_mod(e, m, p):
    result, base = [1], _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _check_irreducible(f, p):
    """gcd(f, x^(p^i) - x) = 1 for 1 <= i < k and f | x^(p^k) - x."""
    k = len(f) - 1
    for i in range(1, k + 1):
        h = _xpow_mod(p**i, f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        h = _ptrim(h)
        if i < k:
            g = _pgcd(f, h, p)
            if len(g) > 1:
                return False
        elif h:
            return False
    return True


class FieldSpec:
    """The finite field GF(p^k) together with its arithmetic tables."""

    def __init__(self, p: int, k: int = 1, min_poly=None):
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise ValidationError(f"field modulus p={p} is not prime")
        if k < 1:
            raise ValidationError(f"extension degree k={k} must be >= 1")
        p, k = int(p), int(k)
        if k == 1:
            if min_poly is not None and len(_ptrim([c % p for c in min_poly])) > 2:
                raise ValidationError("min_poly must be omitted (or linear) when k = 1")
            min_poly = None
        else:
            if min_poly is None:
                raise ValidationError(f"min_poly is required for k={k}")
            f = [int(c) % p for c in min_poly]
            if len(_ptrim(f)) != k + 1:
                raise ValidationError(
                    f"min_poly degree mismatch: expected degree {k}, got {len(_ptrim(f)) - 1}"
                )
            if f[-1] != 1:
                raise ValidationError("min_poly must be monic")
            if not _check_irreducible(f, p):
                raise ValidationError(f"min_poly {f} is reducible over GF({p})")
            min_poly = tuple(f)
        self.p = p
        self.k = k
        self.q = p**k
        self.min_poly = min_poly
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        self._pw = p ** np.arange(k, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = (codes[:, None] // self._pw[None, :]) % p
        # a^t in the power basis, t = 0 .. 2k-2
        red = np.zeros((max(2 * k - 1, 1), k), dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        for t in range(2 * k - 1):
            red[t] = cur
            if k > 1:
                top = cur[-1]
                cur = [0] + cur[:-1]
                for i in range(k):
                    cur[i] = (cur[i] - top * self.min_poly[i]) % p
        self._red = red

        # discrete log tables from a primitive element
        if q == 2:
            exp = [1]
        else:
            exp = None
            for g in range(2, q) if k == 1 else range(p, q):
                exp = self._power_cycle(g)
                if len(exp) == q - 1:
                    break
        self.primitive = exp[1] if q > 2 else 1
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp_l = exp
        self._log_l = log
        self._exp = np.array(exp, dtype=np.int64)
        self._log = np.array(log, dtype=np.int64)
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(-log[a]) % (q - 1)]
        self._inv_l = inv
        self._inv = np.array(inv, dtype=np.int64)
        self._neg = self._combine((-self._digits) % p)
        self._neg_l = self._neg.tolist()

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        da, db = self._digits[a], self._digits[b]
        conv = np.convolve(da, db) % self.p
        return int(self._combine(conv @ self._red[: len(conv)]))

    def _power_cycle(self, g):
        out = [1]
        x = g
        while x != 1:
            out.append(x)
            x = self._slow_mul(x, g)
            if len(out) > self.q:
                break
        return out

    def _combine(self, digits):
        return (np.asarray(digits) % self.p) @ self._pw

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.min_poly) == (other.p, other.k, other.min_poly)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.min_poly))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, min_poly={list(self.min_poly)})"

    def describe(self) -> dict:
        d = {"p": self.p, "k": self.k}
        if self.min_poly is not None:
            d["min_poly"] = list(self.min_poly)
        return d

    # -- encodings -------------------------------------------------------------

    def coeffs(self, code: int) -> tuple:
        return tuple(int(c) for c in self._digits[int(code)])

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValidationError(f"{coeffs} has more than k={self.k} coefficients")
        coeffs += [0] * (self.k - len(coeffs))
        return int(self._combine(np.array(coeffs, dtype=np.int64)))

    def encode(self, code: int):
        """JSON form: an int for prime fields, a coefficient list otherwise."""
        return int(code) if self.k == 1 else list(self.coeffs(code))

    def decode(self, value) -> int:
        if isinstance(value, (list, tuple)):
            return self.from_coeffs([int(c) % self.p for c in value])
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return int(value) % self.p  # integers embed via the prime subfield
        raise ValidationError(f"cannot read {value!r} as an element of {self}")

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.decode(value) if not isinstance(value, FieldElement) else value.code)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    # -- scalar arithmetic on codes ----------------------------------------

    def sadd(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return int(self._combine(self._digits[a] + self._digits[b]))

    def sneg(self, a: int) -> int:
        return self._neg_l[a]

    def ssub(self, a: int, b: int) -> int:
        return self.sadd(a, self._neg_l[b])

    def smul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp_l[(self._log_l[a] + self._log_l[b]) % (self.q - 1)]

    def sinv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv_l[a]

    def spow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp_l[(self._log_l[a] * e) % (self.q - 1)]

    # -- vectorized arithmetic on code arrays --------------------------------

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return self._combine(self._digits[a] + self._digits[b])

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a - b) % self.p
        return self._combine(self._digits[a] - self._digits[b])

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        r = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        if axis is None:
            return self._combine(self._digits[a.ravel()].sum(axis=0))
        if axis < 0:
            axis += a.ndim
        return self._combine(self._digits[a].sum(axis=axis))

    def _int_matmul(self, a, b):
        inner = a.shape[-1]
        if inner * (self.p - 1) ** 2 < 2**52:
            return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64)
        return np.matmul(a, b)

    def matmul(self, a, b):
        """Matrix product with numpy matmul broadcasting semantics."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if a.shape[-1] == 0:
            shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
            return np.zeros(shape, dtype=np.int64)
        p, k = self.p, self.k
        if k == 1:
            return self._int_matmul(a, b) % p
        da, db = self._digits[a], self._digits[b]
        planes = {}
        for s in range(k):
            for t in range(k):
                prod = self._int_matmul(da[..., s], db[..., t]) % p
                planes[s + t] = (planes[s + t] + prod) % p if s + t in planes else prod
        out = None
        for t, plane in planes.items():
            term = plane[..., None] * self._red[t]
            out = term if out is None else out + term
        return self._combine(out % p)

    def convolve(self, a, b):
        """Product of two polynomials given as coefficient-code vectors."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if len(a) == 0 or len(b) == 0:
            return np.zeros(0, dtype=np.int64)
        p, k = self.p, self.k
        if k == 1:
            if min(len(a), len(b)) * (p - 1) ** 2 < 2**62:
                return np.convolve(a, b) % p
            return np.array([int(v) % p for v in np.convolve(a.astype(object), b.astype(object))], dtype=np.int64)
        da, db = self._digits[a], self._digits[b]
        out = np.zeros((len(a) + len(b) - 1, k), dtype=np.int64)
        for s in range(k):
            for t in range(k):
                out += np.convolve(da[:, s], db[:, t])[:, None] * self._red[s + t]
                out %= p
        return self._combine(out)

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = self._exp[(self._log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)


class FieldElement:
    """A single element of a FieldSpec, with operator overloading."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self) -> tuple:
        return self.field.coeffs(self.code)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValidationError(f"mixed-field operands: {self.field} and {other.field}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field.decode(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.sadd(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.ssub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.ssub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.smul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.sneg(self.code))

    def inverse(self):
        return FieldElement(self.field, self.field.sinv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.smul(self.code, self.field.sinv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.spow(self.code, int(e)))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.field.decode(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __lt__(self, other):
        return self.coeffs[::-1] < other.coeffs[::-1] if self.field.k > 1 else self.code < other.code

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return str(self.field.encode(self.code))


def make_field(p: int, k: int = 1, min_poly=None) -> FieldSpec:
    return FieldSpec(p, k, min_poly)


def field_arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch one of add, mul, neg, inv, pow on field elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown field operation {op!r}")


def multiplicative_order(a: FieldElement) -> int:
    if a.code == 0:
        raise ZeroDivisionError("zero has no multiplicative order")
    F = a.field
    n = F.q - 1
    d = n
    for r in prime_factors(n):
        while d % r == 0 and F.spow(a.code, d // r) == 1:
            d //= r
    return d


def roots_of_unity(d: int, F: FieldSpec) -> list[int]:
    """Sorted codes of the solutions of x^d = 1 in the multiplicative group."""
    if d < 1:
        raise ValueError("d must be >= 1")
    g = math.gcd(d, F.q - 1)
    step = (F.q - 1) // g
    return sorted(F._exp_l[(step * j) % (F.q - 1)] for j in range(g))


def elements_of_order_dividing(d: int, F: FieldSpec) -> set:
    return {FieldElement(F, c) for c in roots_of_unity(d, F)}


def lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)
