"""Dense exact linear algebra over a FieldDesc.

Matrices are numpy arrays in the field's dtype (see :mod:`pimsim.field`).
Vectors are rows unless stated otherwise: a Subspace stores its basis as
the rows of a reduced row-echelon matrix.
"""

from __future__ import annotations

import numpy as np

from .errors import AmbientMismatch, DimensionMismatch, FieldMismatch, NonSquare, NoSolution
from .field import FieldDesc
from .poly import Poly, poly_lcm


def rref(field: FieldDesc, m: np.ndarray):
    """Reduced row-echelon form.

    Returns:
        (R, pivots): R has the same shape as m; pivots lists the pivot
        column of each nonzero row, strictly increasing.
    """
    a = np.array(m, dtype=field.dtype, copy=True)
    if a.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    fp = field.is_prime_field
    p = field.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = field.inv(a[r, c])
        if fp:
            a[r] = (a[r] * inv) % p
        else:
            a[r] = a[r] * inv
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            if fp:
                a[others] = (a[others] - np.outer(col[others], a[r])) % p
            else:
                a[others] = a[others] - np.outer(col[others], a[r])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(field: FieldDesc, m: np.ndarray) -> int:
    return len(rref(field, m)[1])


class Subspace:
    """Subspace of field^ambient_dim with a canonical RREF basis (one vector per row)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldDesc, ambient_dim: int, basis: np.ndarray, pivots=None):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = list(pivots) if pivots is not None else _pivots_of(basis)

    @classmethod
    def span(cls, field: FieldDesc, ambient_dim: int, vectors) -> Subspace:
        vecs = vectors if isinstance(vectors, np.ndarray) else field.array(vectors)
        vecs = vecs.reshape(-1, ambient_dim)
        if vecs.dtype != np.dtype(field.dtype):
            vecs = field.array(vecs.tolist()) if vecs.size else field.zeros((0, ambient_dim))
        r, piv = rref(field, vecs)
        return cls(field, ambient_dim, r[: len(piv)], piv)

    @classmethod
    def zero(cls, field: FieldDesc, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, field.zeros((0, ambient_dim)), [])

    @classmethod
    def full(cls, field: FieldDesc, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, field.eye(ambient_dim), list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.tobytes() if self.field.is_prime_field else str(self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"

    def residue(self, vectors: np.ndarray) -> np.ndarray:
        """Reduce rows of ``vectors`` modulo this subspace (zero iff contained)."""
        vectors = np.asarray(vectors, dtype=self.field.dtype).reshape(-1, self.ambient_dim)
        if self.dim == 0 or vectors.shape[0] == 0:
            return vectors.copy()
        coeffs = vectors[:, self.pivots]
        return self.field.reduce(vectors - self.field.matmul(coeffs, self.basis))

    def contains(self, vectors) -> bool:
        return self.field.is_zero(self.residue(vectors))

    def contains_space(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return self.contains(other.basis)

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of contained rows with respect to the RREF basis."""
        vectors = np.asarray(vectors, dtype=self.field.dtype).reshape(-1, self.ambient_dim)
        return vectors[:, self.pivots].copy()

    def complement_columns(self):
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def image(self, m: np.ndarray) -> Subspace:
        """Image under the linear map v -> m v (m acts on column vectors)."""
        if self.dim == 0:
            return Subspace.zero(self.field, m.shape[0])
        return Subspace.span(self.field, m.shape[0], self.field.matmul(self.basis, m.T))

    def __add__(self, other: Subspace) -> Subspace:
        _check_ambient(self, other)
        return Subspace.span(self.field, self.ambient_dim, np.vstack([self.basis, other.basis]))

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_meet_join(self, other)[0]


def _pivots_of(basis: np.ndarray):
    piv = []
    for row in basis:
        nz = np.flatnonzero(row)
        piv.append(int(nz[0]))
    return piv


def _check_ambient(u: Subspace, v: Subspace):
    if u.field != v.field:
        raise FieldMismatch(f"{u.field} vs {v.field}")
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch(f"ambient dims {u.ambient_dim} vs {v.ambient_dim}")


def kernel_basis(field: FieldDesc, m: np.ndarray) -> Subspace:
    """Right kernel {v : m v = 0} as a Subspace of field^cols."""
    m = np.asarray(m, dtype=field.dtype)
    rows, cols = m.shape
    r, piv = rref(field, m)
    free = [j for j in range(cols) if j not in set(piv)]
    basis = field.zeros((len(free), cols))
    for k, j in enumerate(free):
        basis[k, j] = field.one
        for i, pc in enumerate(piv):
            basis[k, pc] = field.neg(r[i, j])
    return Subspace.span(field, cols, basis)


def left_kernel(field: FieldDesc, m: np.ndarray) -> Subspace:
    """{y : y m = 0}."""
    return kernel_basis(field, np.asarray(m).T)


def solve(field: FieldDesc, m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Particular solution X of m X = rhs with free variables set to zero.

    Raises:
        NoSolution: the system is inconsistent.
        DimensionMismatch: row counts differ.
    """
    m = np.asarray(m, dtype=field.dtype)
    rhs = np.asarray(rhs, dtype=field.dtype)
    vector = rhs.ndim == 1
    if vector:
        rhs = rhs.reshape(-1, 1)
    if m.shape[0] != rhs.shape[0]:
        raise DimensionMismatch(f"{m.shape} vs rhs {rhs.shape}")
    cols = m.shape[1]
    r, piv = rref(field, np.hstack([m, rhs]))
    if piv and piv[-1] >= cols:
        raise NoSolution("inconsistent linear system")
    x = field.zeros((cols, rhs.shape[1]))
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols:]
    return x[:, 0] if vector else x


def inverse(field: FieldDesc, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise NonSquare("inverse of a non-square matrix")
    r, piv = rref(field, np.hstack([np.asarray(m, dtype=field.dtype), field.eye(n)]))
    if piv[:n] != list(range(n)) or (len(piv) > n):
        raise NoSolution("singular matrix")
    return r[:, n:]


def subspace_meet_join(u: Subspace, v: Subspace):
    """Return (u ∩ v, u + v)."""
    _check_ambient(u, v)
    f = u.field
    join = u + v
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(f, u.ambient_dim), join
    # x u_basis = y v_basis  <=>  [x | y] [[U], [-V]] = 0
    stacked = np.vstack([u.basis, f.neg(v.basis)])
    ker = left_kernel(f, stacked)
    meet_vecs = f.matmul(ker.basis[:, : u.dim], u.basis)
    return Subspace.span(f, u.ambient_dim, meet_vecs), join


def intersect_all(field: FieldDesc, ambient_dim: int, spaces) -> Subspace:
    out = Subspace.full(field, ambient_dim)
    for s in spaces:
        out = out & s
    return out


def matrix_power(field: FieldDesc, m: np.ndarray, k: int) -> np.ndarray:
    result = field.eye(m.shape[0])
    base = m
    while k:
        if k & 1:
            result = field.matmul(result, base)
        base = field.matmul(base, base)
        k >>= 1
    return result


def _hessenberg(field: FieldDesc, m: np.ndarray) -> np.ndarray:
    h = np.array(m, dtype=field.dtype, copy=True)
    n = h.shape[0]
    for k in range(n - 2):
        nz = np.flatnonzero(h[k + 1 :, k])
        if nz.size == 0:
            continue
        i = k + 1 + int(nz[0])
        if i != k + 1:
            h[[i, k + 1]] = h[[k + 1, i]]
            h[:, [i, k + 1]] = h[:, [k + 1, i]]
        inv = field.inv(h[k + 1, k])
        for r in range(k + 2, n):
            if h[r, k] == 0:
                continue
            u = field.scalar(h[r, k] * inv)
            h[r] = field.reduce(h[r] - field.mul(h[k + 1], u))
            h[:, k + 1] = field.reduce(h[:, k + 1] + field.mul(h[:, r], u))
    return h


def char_poly(field: FieldDesc, m: np.ndarray) -> Poly:
    """Characteristic polynomial det(tI - m) via Hessenberg reduction."""
    n = m.shape[0]
    if m.ndim != 2 or m.shape != (n, n):
        raise NonSquare(f"char_poly of a {m.shape} matrix")
    h = _hessenberg(field, m)
    t = Poly.x(field)
    polys = [Poly.const(field, 1)]
    for k in range(n):
        pk = (t - h[k, k]) * polys[k]
        prod = field.one
        for i in range(k - 1, -1, -1):
            prod = field.scalar(prod * h[i + 1, i])
            if prod == 0:
                break
            c = field.scalar(h[i, k] * prod)
            if c != 0:
                pk = pk - polys[i].scale(c)
        polys.append(pk)
    return polys[n]


def _krylov_min_poly(field: FieldDesc, m: np.ndarray, v: np.ndarray) -> Poly:
    """Least monic g with g(m) v = 0."""
    n = m.shape[0]
    if field.is_zero(v):
        return Poly.const(field, 1)
    cols = [v]
    for _ in range(n):
        cols.append(field.matmul(m, cols[-1]))
    r, piv = rref(field, np.array(cols, dtype=field.dtype).T)
    k = len(piv)
    # columns 0..k-1 are independent; column k depends on them
    return Poly(field, [field.neg(r[i, k]) for i in range(k)] + [1])


def min_poly(field: FieldDesc, m: np.ndarray) -> Poly:
    """Minimal polynomial as the LCM of the Krylov annihilators of the basis vectors."""
    n = m.shape[0]
    if m.ndim != 2 or m.shape != (n, n):
        raise NonSquare(f"min_poly of a {m.shape} matrix")
    g = Poly.const(field, 1)
    g_at_m = None
    for j in range(n):
        if g_at_m is not None and field.is_zero(g_at_m[:, j]):
            continue
        e = field.zeros(n)
        e[j] = field.one
        g = poly_lcm(g, _krylov_min_poly(field, m, e))
        g_at_m = g.eval_matrix(m)
    return g
