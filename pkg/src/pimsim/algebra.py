"""Finite-dimensional unital algebras given by structure constants.

``b_i * b_j = sum_k table[i, j, k] * b_k``.  Left multiplication by b_i
acts on coordinate column vectors through ``left_ops[i]`` where
``left_ops[i][k, j] = table[i, j, k]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import (
    BadParam,
    DimensionMismatch,
    ImproperIdeal,
    NoIdentity,
    NoSolution,
    NotClosed,
    NotTwoSided,
    ParseError,
    UnsupportedCharacteristic,
)
from .field import FieldDesc
from .linalg import Subspace, kernel_basis, rref, solve


class AlgebraData:
    """Structure-constant description of a unital associative algebra."""

    def __init__(self, field: FieldDesc, dim: int, table: np.ndarray, unit, labels=None):
        if dim < 1:
            raise BadParam("algebra dimension must be at least 1")
        table = np.asarray(table, dtype=field.dtype)
        if table.shape != (dim, dim, dim):
            raise DimensionMismatch(f"structure tensor has shape {table.shape}, expected {(dim,) * 3}")
        unit = np.asarray(unit, dtype=field.dtype).reshape(-1)
        if unit.shape != (dim,):
            raise DimensionMismatch("unit vector has the wrong length")
        self.field = field
        self.dim = dim
        self.table = table
        self.unit = unit
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise DimensionMismatch("label count differs from dimension")

    @classmethod
    def from_entries(cls, field: FieldDesc, dim: int, entries, unit, labels=None) -> AlgebraData:
        """Build from sparse ``(i, j, k, value)`` entries."""
        table = field.zeros((dim, dim, dim))
        for i, j, k, value in entries:
            if not all(0 <= t < dim for t in (i, j, k)):
                raise DimensionMismatch(f"structure index {(i, j, k)} out of range")
            table[i, j, k] = field.scalar(value)
        return cls(field, dim, table, field.array(list(unit)), labels)

    def entries(self):
        """Sparse nonzero entries in (i, j, k) order."""
        return [(int(i), int(j), int(k), self.table[i, j, k]) for i, j, k in zip(*np.nonzero(self.table))]

    def __eq__(self, other):
        if not isinstance(other, AlgebraData):
            return NotImplemented
        return (
            self.field == other.field
            and self.dim == other.dim
            and bool(np.all(self.table == other.table))
            and bool(np.all(self.unit == other.unit))
        )

    __hash__ = None

    def __repr__(self):
        return f"AlgebraData(dim={self.dim}, field={self.field})"

    @cached_property
    def left_ops(self) -> np.ndarray:
        return np.ascontiguousarray(self.table.transpose(0, 2, 1))

    @cached_property
    def right_ops(self) -> np.ndarray:
        # right_ops[j][k, i] = table[i, j, k]
        return np.ascontiguousarray(self.table.transpose(1, 2, 0))

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def mul(self, x, y) -> np.ndarray:
        """Product of two coordinate vectors."""
        f = self.field
        d = self.dim
        xt = f.matmul(np.asarray(x, dtype=f.dtype).reshape(1, d), self.table.reshape(d, d * d)).reshape(d, d)
        return f.matmul(np.asarray(y, dtype=f.dtype).reshape(1, d), xt).reshape(d)

    def power(self, x, n: int) -> np.ndarray:
        result = self.unit.copy()
        base = np.asarray(x, dtype=self.field.dtype)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def combine_ops(self, x, ops=None) -> np.ndarray:
        """sum_i x_i ops[i] (defaults to the left operators)."""
        ops = self.left_ops if ops is None else ops
        d, n, m = ops.shape
        x = np.asarray(x, dtype=self.field.dtype).reshape(1, d)
        return self.field.matmul(x, ops.reshape(d, n * m)).reshape(n, m)

    def to_json(self) -> dict:
        f = self.field
        return {
            "field": f.to_json(),
            "dim": self.dim,
            "labels": list(self.labels),
            "unit": [f.format_scalar(x) for x in self.unit],
            "structure": [[i, j, k, f.format_scalar(v)] for i, j, k, v in self.entries()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


_ALGEBRA_KEYS = {"field", "dim", "labels", "unit", "structure"}


def algebra_from_json(obj, field_override: FieldDesc | None = None) -> AlgebraData:
    """Parse the algebra-file schema; unknown keys are rejected."""
    if not isinstance(obj, dict):
        raise ParseError("algebra definition must be a JSON object")
    unknown = set(obj) - _ALGEBRA_KEYS
    if unknown:
        raise ParseError(f"unknown keys in algebra file: {sorted(unknown)}")
    missing = {"field", "dim", "unit", "structure"} - set(obj)
    if missing:
        raise ParseError(f"missing keys in algebra file: {sorted(missing)}")
    field = field_override or FieldDesc.from_json(obj["field"])
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"bad dimension {dim!r}")
    entries = []
    for e in obj["structure"]:
        if not isinstance(e, list) or len(e) != 4 or not all(isinstance(t, int) for t in e[:3]):
            raise ParseError(f"bad structure entry {e!r}")
        entries.append((e[0], e[1], e[2], _scalar_entry(field, e[3])))
    unit = [_scalar_entry(field, u) for u in obj["unit"]]
    if len(unit) != dim:
        raise ParseError("unit length differs from dim")
    return AlgebraData.from_entries(field, dim, entries, unit, obj.get("labels"))


def _scalar_entry(field, value):
    if isinstance(value, str):
        return field.parse_scalar(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return field.scalar(value)
    raise ParseError(f"scalars must be strings, got {value!r}")


def load_algebra(path, field_override=None) -> AlgebraData:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return algebra_from_json(obj, field_override)


@dataclass
class ValidationReport:
    ok: bool
    violations: list = dc_field(default_factory=list)

    def to_json(self):
        return {"valid": self.ok, "violations": [list(v) for v in self.violations]}


def validate_algebra(a: AlgebraData) -> ValidationReport:
    """Check associativity (L_{b_i} L_{b_j} = L_{b_i b_j}) and the two-sided unit.

    Associativity violations are reported as ``("associativity", i, j, l)``
    meaning ``b_i (b_j b_l) != (b_i b_j) b_l``.
    """
    f = a.field
    d = a.dim
    L = a.left_ops
    violations = []
    composed = f.reduce(np.matmul(L[:, None], L[None, :])) if f.is_prime_field and d * (f.p - 1) ** 2 < 2**62 else None
    if composed is None:
        composed = np.empty((d, d, d, d), dtype=f.dtype)
        for i in range(d):
            for j in range(d):
                composed[i, j] = f.matmul(L[i], L[j])
    expected = f.matmul(a.table.reshape(d * d, d), L.reshape(d, d * d)).reshape(d, d, d, d)
    bad = np.nonzero(np.any(composed != expected, axis=2))
    for i, j, l in zip(*bad):
        violations.append(("associativity", int(i), int(j), int(l)))
    left_unit = a.combine_ops(a.unit)
    right_unit = a.combine_ops(a.unit, a.right_ops)
    eye = f.eye(d)
    for j in range(d):
        if np.any(left_unit[:, j] != eye[:, j]):
            violations.append(("left_unit", j))
        if np.any(right_unit[:, j] != eye[:, j]):
            violations.append(("right_unit", j))
    return ValidationReport(not violations, violations)


def mult_operator(a: AlgebraData, x, side: str = "left") -> np.ndarray:
    """Matrix of y -> x*y (side="left") or y -> y*x (side="right")."""
    x = np.asarray(x, dtype=a.field.dtype).reshape(-1)
    if x.shape != (a.dim,):
        raise DimensionMismatch(f"element of length {x.shape[0]} for a dim-{a.dim} algebra")
    side = side.lower()
    if side not in ("left", "right"):
        raise BadParam(f"side must be left or right, got {side!r}")
    return a.combine_ops(x, a.left_ops if side == "left" else a.right_ops)


def opposite(a: AlgebraData) -> AlgebraData:
    return AlgebraData(a.field, a.dim, a.table.transpose(1, 0, 2).copy(), a.unit.copy(), a.labels)


# -- builders -----------------------------------------------------------

BUILDER_KINDS = ("upper-triangular", "full-matrix", "cyclic-group", "truncated-poly", "direct-product")


def _matrix_unit_algebra(field, n, pairs, labels):
    index = {pair: k for k, pair in enumerate(pairs)}
    entries = []
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                entries.append((a, b, index[(i, l)], 1))
    unit = [1 if i == j else 0 for i, j in pairs]
    return AlgebraData.from_entries(field, len(pairs), entries, unit, labels)


def upper_triangular(n: int, field: FieldDesc) -> AlgebraData:
    """Upper-triangular n x n matrices; basis e_ij (i <= j) in row-major order."""
    if n < 1:
        raise BadParam("n must be at least 1")
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    return _matrix_unit_algebra(field, n, pairs, [f"e{i + 1}{j + 1}" for i, j in pairs])


def full_matrix(n: int, field: FieldDesc) -> AlgebraData:
    """All n x n matrices; basis e_ij in row-major order."""
    if n < 1:
        raise BadParam("n must be at least 1")
    pairs = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_unit_algebra(field, n, pairs, [f"e{i + 1}{j + 1}" for i, j in pairs])


def cyclic_group_algebra(n: int, field: FieldDesc) -> AlgebraData:
    """Group algebra of C_n; basis g^0, ..., g^(n-1)."""
    if n < 1:
        raise BadParam("n must be at least 1")
    entries = [(i, j, (i + j) % n, 1) for i in range(n) for j in range(n)]
    unit = [1] + [0] * (n - 1)
    return AlgebraData.from_entries(field, n, entries, unit, [f"g{i}" for i in range(n)])


def truncated_poly(n: int, field: FieldDesc) -> AlgebraData:
    """K[t]/(t^n); basis 1, t, ..., t^(n-1)."""
    if n < 1:
        raise BadParam("n must be at least 1")
    entries = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    unit = [1] + [0] * (n - 1)
    return AlgebraData.from_entries(field, n, entries, unit, ["1"] + [f"t{i}" if i > 1 else "t" for i in range(1, n)])


def direct_product(a: AlgebraData, b: AlgebraData) -> AlgebraData:
    """A x B with the basis of A followed by the basis of B; unit (1_A, 1_B)."""
    a.field.check_same(b.field)
    d = a.dim + b.dim
    table = a.field.zeros((d, d, d))
    table[: a.dim, : a.dim, : a.dim] = a.table
    table[a.dim :, a.dim :, a.dim :] = b.table
    unit = np.concatenate([a.unit, b.unit])
    labels = [f"a.{x}" for x in a.labels] + [f"b.{x}" for x in b.labels]
    return AlgebraData(a.field, d, table, unit, labels)


def build_example(kind: str, field: FieldDesc, n: int | None = None, a=None, b=None) -> AlgebraData:
    kind = kind.lower().replace("_", "-")
    builders = {
        "upper-triangular": upper_triangular,
        "full-matrix": full_matrix,
        "cyclic-group": cyclic_group_algebra,
        "truncated-poly": truncated_poly,
    }
    if kind in builders:
        if n is None or n < 1:
            raise BadParam(f"{kind} needs n >= 1")
        return builders[kind](n, field)
    if kind == "direct-product":
        if a is None or b is None:
            raise BadParam("direct-product needs two factor algebras")
        return direct_product(a, b)
    raise BadParam(f"unknown builder {kind!r}")


# -- ideals ---------------------------------------------------------------


class IdealHandle:
    """A left or two-sided ideal, with closure verified on construction."""

    def __init__(self, algebra: AlgebraData, space: Subspace, sidedness: str = "two-sided", check: bool = True):
        if sidedness not in ("left", "two-sided"):
            raise BadParam(f"bad sidedness {sidedness!r}")
        self.algebra = algebra
        self.space = space
        self.sidedness = sidedness
        if check and not is_ideal(algebra, space, sidedness):
            raise NotClosed(f"subspace is not a {sidedness} ideal")

    @property
    def dim(self):
        return self.space.dim

    def __repr__(self):
        return f"IdealHandle(dim={self.dim}, {self.sidedness})"


def is_ideal(a: AlgebraData, space: Subspace, sidedness: str = "two-sided") -> bool:
    if space.dim == 0:
        return True
    f = a.field
    d = a.dim
    ops = [a.left_ops] + ([a.right_ops] if sidedness == "two-sided" else [])
    for op in ops:
        images = f.matmul(op.reshape(d * d, d), space.basis.T)  # (i, k) x vectors
        images = images.reshape(d, d, -1).transpose(0, 2, 1).reshape(-1, d)
        if not space.contains(images):
            return False
    return True


def ideal_product(a: AlgebraData, i: Subspace, j: Subspace) -> Subspace:
    """span{x*y : x in i, y in j}."""
    f = a.field
    if i.dim == 0 or j.dim == 0:
        return Subspace.zero(f, a.dim)
    prods = []
    for x in i.basis:
        lx = a.combine_ops(x)
        prods.append(f.matmul(j.basis, lx.T))
    return Subspace.span(f, a.dim, np.vstack(prods))


def nilpotency_index(a: AlgebraData, ideal: Subspace, limit: int | None = None) -> int | None:
    """Least n >= 1 with ideal^n = 0, or None if the chain stalls (not nilpotent)."""
    limit = a.dim + 1 if limit is None else limit
    power = ideal
    n = 1
    while power.dim:
        nxt = ideal_product(a, power, ideal)
        if nxt.dim == power.dim or n > limit:
            return None
        power = nxt
        n += 1
    return n


def dickson_radical(a: AlgebraData) -> IdealHandle:
    """Radical as the kernel of the trace form (char 0, or p > dim)."""
    f = a.field
    d = a.dim
    if f.is_prime_field and f.p <= d:
        raise UnsupportedCharacteristic(f"trace-form radical needs p > dim, got p={f.p}, dim={d}")
    L = a.left_ops
    gram = f.matmul(L.reshape(d, d * d), L.transpose(0, 2, 1).reshape(d, d * d).T)
    space = kernel_basis(f, gram)
    ideal = IdealHandle(a, space, "two-sided")
    if nilpotency_index(a, space) is None:
        raise UnsupportedCharacteristic("trace-form kernel is not nilpotent")
    return ideal


def quotient_projection(space: Subspace) -> np.ndarray:
    """Matrix (q x n) sending coordinates to complement coordinates modulo ``space``."""
    f = space.field
    n = space.ambient_dim
    comp = space.complement_columns()
    proj = f.zeros((len(comp), n))
    for r, c in enumerate(comp):
        proj[r, c] = f.one
    if space.dim:
        # x[comp] - B[:, comp]^T x[piv]
        proj[:, space.pivots] = f.neg(space.basis[:, comp].T)
    return proj


def quotient_algebra(a: AlgebraData, ideal: IdealHandle):
    """Return (A/I, projection matrix) on the complement coordinates of I."""
    if ideal.sidedness != "two-sided":
        raise NotTwoSided("quotient needs a two-sided ideal")
    if ideal.space.dim >= a.dim:
        raise ImproperIdeal("cannot quotient by the whole algebra")
    f = a.field
    comp = ideal.space.complement_columns()
    proj = quotient_projection(ideal.space)
    q = len(comp)
    sub = a.table[np.ix_(comp, comp)].reshape(q * q, a.dim)
    table = f.matmul(sub, proj.T).reshape(q, q, q)
    unit = f.matmul(proj, a.unit)
    return AlgebraData(f, q, table, unit, [a.labels[c] for c in comp]), proj


def algebra_from_endos(field: FieldDesc, homs):
    """Package a basis of a unital matrix algebra as structure constants.

    Returns:
        (AlgebraData, basis) where basis is the (k, n, n) stack of the given
        matrices; coordinates of the algebra refer to this basis.
    """
    homs = np.asarray(homs, dtype=field.dtype)
    k = homs.shape[0]
    if k == 0:
        raise NoIdentity("empty basis")
    n = homs.shape[1]
    flat = homs.reshape(k, n * n)
    r, piv = rref(field, flat)
    if len(piv) != k:
        raise BadParam("endomorphisms are linearly dependent")
    # coordinates of X in the given basis: X[piv] @ C^{-1}, C = flat[:, piv]
    cinv = solve(field, flat[:, piv].T, field.eye(k)).T

    def coords(mats):
        m = mats.reshape(-1, n * n)
        y = field.matmul(m[:, piv], cinv)
        if np.any(field.matmul(y, flat) != m):
            raise NotClosed("product falls outside the span")
        return y

    prods = np.empty((k, k, n, n), dtype=field.dtype)
    for i in range(k):
        prods[i] = np.stack([field.matmul(homs[i], homs[j]) for j in range(k)])
    table = coords(prods).reshape(k, k, k)
    try:
        unit = coords(field.eye(n)).reshape(k)
    except NotClosed as exc:
        raise NoIdentity("identity matrix is not in the span") from exc
    return AlgebraData(field, k, table, unit), homs


def span_coordinates(field: FieldDesc, basis: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Coordinates of rows of ``vectors`` with respect to the rows of ``basis``."""
    try:
        return solve(field, basis.T, vectors.T).T
    except NoSolution as exc:
        raise NotClosed("vector outside the span") from exc
