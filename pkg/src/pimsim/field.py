"""Exact scalar fields: prime fields F_p and the rationals Q.

Scalars are plain Python values: ``int`` residues in ``[0, p)`` for F_p and
``fractions.Fraction`` for Q.  Matrices are numpy arrays, ``int64`` for F_p
and ``object`` (holding Fractions) for Q; every array helper lives on
:class:`FieldDesc` so that the linear-algebra layer is written once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadParam, DivisionByZero, FieldMismatch, ParseError

PRIME_BOUND = 2**31
_INT64_LIMIT = 2**63


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3,215,031,751."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldDesc:
    """A prime field (``kind == "fp"``) or the rationals (``kind == "q"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "fp":
            if not isinstance(self.p, int) or not 2 <= self.p < PRIME_BOUND:
                raise BadParam(f"prime must satisfy 2 <= p < 2^31, got {self.p!r}")
            if not is_prime(self.p):
                raise BadParam(f"{self.p} is not prime")
        elif self.kind == "q":
            if self.p is not None:
                raise BadParam("the rationals take no modulus")
        else:
            raise BadParam(f"unknown field kind {self.kind!r}")

    @classmethod
    def fp(cls, p: int) -> FieldDesc:
        return cls("fp", p)

    @classmethod
    def q(cls) -> FieldDesc:
        return cls("q")

    @classmethod
    def parse(cls, text: str) -> FieldDesc:
        """Parse ``"fp:5"``, ``"f5"``, ``"gf5"`` or ``"q"``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls.q()
        for prefix in ("fp:", "gf", "f"):
            if t.startswith(prefix):
                try:
                    return cls.fp(int(t[len(prefix):]))
                except ValueError:
                    break
        raise ParseError(f"cannot parse field {text!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "fp"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "fp" else 0

    def __str__(self):
        return f"F_{self.p}" if self.kind == "fp" else "Q"

    def to_json(self) -> dict:
        return {"kind": "fp", "p": self.p} if self.kind == "fp" else {"kind": "q"}

    @classmethod
    def from_json(cls, obj) -> FieldDesc:
        if not isinstance(obj, dict) or set(obj) - {"kind", "p"}:
            raise ParseError(f"bad field description {obj!r}")
        if obj.get("kind") == "fp":
            return cls.fp(obj.get("p"))
        if obj.get("kind") == "q":
            return cls.q()
        raise ParseError(f"bad field kind in {obj!r}")

    # -- scalars ---------------------------------------------------------

    def scalar(self, value):
        """Canonical scalar for an int, Fraction or decimal/fraction string."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.kind == "fp":
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise DivisionByZero(f"{value} has no image in {self}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def parse_scalar(self, text: str):
        t = text.strip().replace("−", "-")
        try:
            value = Fraction(t)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}") from exc
        return self.scalar(value)

    def format_scalar(self, x) -> str:
        if self.kind == "fp":
            return str(int(x) % self.p)
        return str(Fraction(x))

    def inv(self, x):
        if self.kind == "fp":
            x = int(x) % self.p
            if x == 0:
                raise DivisionByZero(f"0 has no inverse in {self}")
            return pow(x, -1, self.p)
        x = Fraction(x)
        if x == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / x

    def check_same(self, other: FieldDesc):
        if self != other:
            raise FieldMismatch(f"{self} vs {other}")

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.kind != "fp":
            raise BadParam("Q is infinite")
        return range(self.p)

    def random_scalar(self, rng):
        if self.kind == "fp":
            return rng.randrange(self.p)
        return Fraction(rng.randint(-9, 9))

    # -- arrays ----------------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.kind == "fp" else object

    def array(self, values) -> np.ndarray:
        """Canonical array from nested sequences of ints, Fractions or strings."""
        raw = np.array(values, dtype=object)
        if raw.size:
            raw = np.vectorize(self.scalar, otypes=[object])(raw)
        return raw.astype(self.dtype) if self.kind == "fp" else raw

    def zeros(self, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=self.dtype)
        if self.kind == "q" and out.size:
            out[...] = Fraction(0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    @property
    def one(self):
        return 1 if self.kind == "fp" else Fraction(1)

    @property
    def zero(self):
        return 0 if self.kind == "fp" else Fraction(0)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.kind == "fp" else a

    def neg(self, a):
        return (-a) % self.p if self.kind == "fp" else -a

    def mul(self, a, b):
        """Elementwise product (broadcasting)."""
        if self.kind == "fp":
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        return a * b

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact matrix product, reduced."""
        if self.kind == "q":
            return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
        p = self.p
        inner = a.shape[-1]
        if a.size == 0 or b.size == 0 or inner == 0:
            return (a @ b) % p
        if inner * (p - 1) ** 2 < _INT64_LIMIT:
            return (a @ b) % p
        if inner * (p - 1) * 2**16 < _INT64_LIMIT:
            hi, lo = a >> 16, a & 0xFFFF
            return ((((hi @ b) % p) << 16) + lo @ b) % p
        return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)

    def is_zero(self, a) -> bool:
        return not np.any(a)

    def random_array(self, rng, shape) -> np.ndarray:
        out = self.zeros(shape)
        flat = out.reshape(-1)
        for i in range(flat.size):
            flat[i] = self.random_scalar(rng)
        return out

    def format_array(self, a: np.ndarray):
        """Nested lists of scalar strings (the on-disk convention)."""
        if a.ndim == 0:
            return self.format_scalar(a[()])
        return [self.format_array(x) for x in a]


def scalar_inv(field: FieldDesc, x):
    """Multiplicative inverse of a scalar; raises DivisionByZero for 0."""
    return field.inv(field.scalar(x))
