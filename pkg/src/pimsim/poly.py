"""Univariate polynomials over a FieldDesc, and factorization over F_p."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, FieldMismatch, UnsupportedField, ZeroPolynomial
from .field import FieldDesc


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients lowest degree first, trailing zeros stripped."""

    field: FieldDesc
    coeffs: tuple

    def __init__(self, field: FieldDesc, coeffs=()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _strip(field.scalar(c) for c in coeffs))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field, n, c=1):
        return cls(field, (0,) * n + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.field, other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def _norm(self, x):
        return x % self.field.p if self.field.is_prime_field else x

    def __add__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return Poly(self.field, [self._norm(x + y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [self._norm(-x) for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(self.field, [self._norm(c) for c in out])

    __rmul__ = __mul__

    def scale(self, c):
        return Poly(self.field, [self._norm(c * x) for x in self.coeffs])

    def monic(self):
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lead))

    def __divmod__(self, other):
        other = self._check(other)
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = self.field.inv(other.lead)
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = self._norm(rem[k] * inv_lead)
            if c == 0:
                continue
            quot[k - db] = c
            for j, y in enumerate(other.coeffs):
                rem[k - db + j] = self._norm(rem[k - db + j] - c * y)
        return Poly(self.field, quot), Poly(self.field, rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation at a scalar."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = self._norm(acc * x + c)
        return acc

    def powmod(self, n: int, modulus: Poly) -> Poly:
        result = Poly.const(self.field, 1) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def derivative(self):
        return Poly(self.field, [self._norm(i * c) for i, c in enumerate(self.coeffs)][1:])

    def eval_matrix(self, m: np.ndarray) -> np.ndarray:
        """Horner evaluation at a square matrix."""
        f = self.field
        n = m.shape[0]
        acc = f.zeros((n, n))
        for c in reversed(self.coeffs):
            acc = f.matmul(acc, m)
            for i in range(n):
                acc[i, i] = self._norm(acc[i, i] + c)
        return acc

    def sort_key(self):
        return (self.degree, tuple(int(c) if self.field.is_prime_field else c for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = self.field.format_scalar(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(reversed(terms))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(f, 1), Poly(f)
    t0, t1 = Poly(f), Poly.const(f, 1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    c = f.inv(r0.lead)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly(a.field)
    return (a * b // poly_gcd(a, b)).monic()


# -- factorization over F_p ------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    """For f(t) = g(t^p) over F_p, return g (Frobenius is the identity on F_p)."""
    p = f.field.p
    return Poly(f.field, f.coeffs[::p])


def squarefree_decomposition(f: Poly):
    """Return [(g, m)] with f = lead * prod g^m, g squarefree, pairwise coprime."""
    p = f.field.p
    out = []

    def rec(g, mult):
        if g.degree < 1:
            return
        d = g.derivative()
        if not d:
            rec(_pth_root(g), mult * p)
            return
        c = poly_gcd(g, d)
        w = g // c
        i = 1
        while w.degree >= 1:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree >= 1:
                out.append((z.monic(), i * mult))
            i += 1
            w, c = y, c // y
        if c.degree >= 1:
            rec(_pth_root(c), mult * p)

    rec(f.monic(), 1)
    return out


def distinct_degree(f: Poly):
    """Split a monic squarefree f into [(g_d, d)], g_d the product of degree-d factors."""
    p = f.field.p
    x = Poly.x(f.field)
    out = []
    h = x
    d = 0
    g = f
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(p, g)
        fac = poly_gcd(g, h - x)
        if fac.degree >= 1:
            out.append((fac, d))
            g = g // fac
            h = h % g
    if g.degree >= 1:
        out.append((g.monic(), g.degree))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random):
    """Cantor-Zassenhaus splitting of a monic squarefree f whose factors all have degree d."""
    if f.degree == d:
        return [f]
    fld = f.field
    p = fld.p
    n = f.degree
    while True:
        a = Poly(fld, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            b = a % f
            acc = b
            for _ in range(d - 1):
                b = (b * b) % f
                acc = acc + b
        else:
            acc = a.powmod((p**d - 1) // 2, f) - 1
        g = poly_gcd(f, acc)
        if 0 < g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def poly_factor(f: Poly, seed: int = 0):
    """Factor f over F_p into sorted [(monic irreducible, multiplicity)].

    The leading coefficient is dropped; re-expanding and scaling by
    ``f.lead`` reproduces ``f``.
    """
    if not f.field.is_prime_field:
        raise UnsupportedField("polynomial factorization is only available over F_p")
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    result = {}
    for g, m in squarefree_decomposition(f):
        for block, d in distinct_degree(g):
            for irr in equal_degree(block, d, rng):
                irr = irr.monic()
                result[irr.coeffs] = result.get(irr.coeffs, 0) + m
    factors = [(Poly(f.field, c), m) for c, m in result.items()]
    factors.sort(key=lambda fm: fm[0].sort_key())
    return factors


def expand_factorization(field: FieldDesc, factors, lead=1) -> Poly:
    out = Poly.const(field, lead)
    for g, m in factors:
        out = out * g**m
    return out


def poly_roots(f: Poly, seed: int = 0):
    """Distinct roots in F_p, ascending."""
    return sorted(int((-g.coeffs[0]) % f.field.p) for g, _ in poly_factor(f, seed) if g.degree == 1)
