"""Left modules over a structure-constant algebra, given by action matrices.

A module of dimension n carries one n x n matrix ``actions[i]`` per
algebra basis element b_i, acting on column vectors.  Subspaces of the
module are :class:`~pimsim.linalg.Subspace` objects whose rows are vectors.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import AlgebraData, IdealHandle, ValidationReport, algebra_from_endos, algebra_from_json, load_algebra, opposite
from .certificates import NOT_PROJECTIVE_WITNESS, PROJECTIVE_BY_SECTION, Certificate
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    IncompleteSimples,
    NoSolution,
    NotEndomorphism,
    NotInvariant,
    ParseError,
    ZeroModule,
)
from .linalg import Subspace, kernel_basis, left_kernel, matrix_power, rank, rref, solve


class ModuleRep:
    """A finite-dimensional left module.

    Args:
        algebra: the acting algebra.
        actions: array of shape (d, n, n).
        generators: optional rows known to generate the module; used as a
            fast path by hom computations and generator searches.
    """

    def __init__(self, algebra: AlgebraData, actions, generators=None):
        f = algebra.field
        actions = np.asarray(actions, dtype=f.dtype)
        if actions.ndim != 3 or actions.shape[0] != algebra.dim or actions.shape[1] != actions.shape[2]:
            raise DimensionMismatch(f"action array of shape {actions.shape} for a dim-{algebra.dim} algebra")
        self.algebra = algebra
        self.actions = actions
        n = actions.shape[1]
        self._generators = None if generators is None or n == 0 else np.asarray(generators, dtype=f.dtype).reshape(-1, n)

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.actions.shape[1]

    def __repr__(self):
        return f"ModuleRep(dim={self.dim}, algebra dim={self.algebra.dim}, {self.field})"

    def __eq__(self, other):
        if not isinstance(other, ModuleRep):
            return NotImplemented
        return (other.algebra is self.algebra or other.algebra == self.algebra) and (
            self.actions.shape == other.actions.shape and bool(np.all(self.actions == other.actions))
        )

    __hash__ = None

    def act(self, x) -> np.ndarray:
        """Matrix of the algebra element with coordinates x."""
        return self.algebra.combine_ops(x, self.actions)

    def apply_all(self, vectors: np.ndarray) -> np.ndarray:
        """Rows rho(b_i) v for every basis element b_i and every row v."""
        d, n = self.algebra.dim, self.dim
        k = vectors.shape[0]
        imgs = self.field.matmul(self.actions.reshape(d * n, n), vectors.T)
        return imgs.reshape(d, n, k).transpose(0, 2, 1).reshape(d * k, n)

    @cached_property
    def generating_set(self) -> np.ndarray:
        """Rows generating the module (the hint if present, else greedy over the basis)."""
        f = self.field
        if self._generators is not None and spin(self, self._generators).is_full():
            return self._generators
        gens = []
        space = Subspace.zero(f, self.dim)
        eye = f.eye(self.dim)
        for j in range(self.dim):
            if space.is_full():
                break
            if not space.contains(eye[j]):
                gens.append(eye[j])
                space = spin(self, eye[j : j + 1], start=space)
        return np.array(gens, dtype=f.dtype).reshape(-1, self.dim)

    def to_json(self, algebra_ref=None) -> dict:
        f = self.field
        return {
            "algebra": algebra_ref if algebra_ref is not None else self.algebra.to_json(),
            "dim": self.dim,
            "action": [f.format_array(a) for a in self.actions],
        }


def module_from_json(obj, base_dir=".", field_override=None) -> ModuleRep:
    import os

    if not isinstance(obj, dict) or set(obj) - {"algebra", "dim", "action"}:
        raise ParseError("module file must have keys algebra, dim, action")
    alg = obj.get("algebra")
    if isinstance(alg, str):
        algebra = load_algebra(os.path.join(base_dir, alg), field_override)
    else:
        algebra = algebra_from_json(alg, field_override)
    n = obj.get("dim")
    f = algebra.field
    action = obj.get("action")
    if not isinstance(n, int) or n < 0 or not isinstance(action, list) or len(action) != algebra.dim:
        raise ParseError("module dim/action malformed")
    mats = f.zeros((algebra.dim, n, n))
    for i, a in enumerate(action):
        if n:
            arr = np.array(a, dtype=object)
            if arr.shape != (n, n):
                raise ParseError(f"action {i} has shape {arr.shape}, expected {(n, n)}")
            mats[i] = f.array(a)
    return ModuleRep(algebra, mats)


def load_module(path, field_override=None) -> ModuleRep:
    import os

    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return module_from_json(obj, os.path.dirname(os.path.abspath(path)), field_override)


def validate_module(m: ModuleRep) -> ValidationReport:
    """rho(unit) = I and rho(b_i) rho(b_j) = sum_k c_ijk rho(b_k)."""
    a = m.algebra
    f = m.field
    n = m.dim
    violations = []
    if np.any(m.act(a.unit) != f.eye(n)):
        violations.append(("unit",))
    d = a.dim
    expected = f.matmul(a.table.reshape(d * d, d), m.actions.reshape(d, n * n)).reshape(d, d, n, n)
    for i in range(d):
        left = f.matmul(m.actions[i].reshape(1, n, n), m.actions) if n else m.actions
        bad = np.flatnonzero(np.any((left != expected[i]).reshape(d, -1), axis=1))
        violations.extend(("relation", i, int(j)) for j in bad)
    return ValidationReport(not violations, violations)


def _check_same_algebra(m: ModuleRep, n: ModuleRep):
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise AlgebraMismatch("modules over different algebras")


# -- constructors ---------------------------------------------------------


def regular_module(a: AlgebraData) -> ModuleRep:
    return ModuleRep(a, a.left_ops, generators=a.unit.reshape(1, -1))


def free_module(a: AlgebraData, k: int) -> ModuleRep:
    """Direct sum of k copies of the regular module."""
    out = zero_module(a)
    for _ in range(k):
        out = direct_sum(out, regular_module(a))
    return out


def zero_module(a: AlgebraData) -> ModuleRep:
    return ModuleRep(a, a.field.zeros((a.dim, 0, 0)))


def direct_sum(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    _check_same_algebra(m, n)
    f = m.field
    d = m.algebra.dim
    out = f.zeros((d, m.dim + n.dim, m.dim + n.dim))
    out[:, : m.dim, : m.dim] = m.actions
    out[:, m.dim :, m.dim :] = n.actions
    gens = None
    if m._generators is not None and n._generators is not None:
        gm = np.hstack([m._generators, f.zeros((m._generators.shape[0], n.dim))])
        gn = np.hstack([f.zeros((n._generators.shape[0], m.dim)), n._generators])
        gens = np.vstack([gm, gn])
    return ModuleRep(m.algebra, out, generators=gens)


def transpose_module(m: ModuleRep) -> ModuleRep:
    """The dual action: b_i acts by rho(b_i)^T, a module over the opposite algebra."""
    return ModuleRep(opposite_of(m.algebra), m.actions.transpose(0, 2, 1).copy())


_OPPOSITES = {}


def opposite_of(a: AlgebraData) -> AlgebraData:
    op = a.__dict__.get("_opposite")
    if op is None:
        op = opposite(a)
        a.__dict__["_opposite"] = op
        op.__dict__["_opposite"] = a
    return op


# -- subspaces ------------------------------------------------------------


def spin(m: ModuleRep, vectors, start: Subspace | None = None) -> Subspace:
    """Smallest submodule containing ``vectors`` (and ``start``, assumed invariant)."""
    f = m.field
    vectors = np.asarray(vectors, dtype=f.dtype)
    if vectors.ndim == 1:
        vectors = vectors.reshape(1, -1)
    if vectors.shape[1] != m.dim:
        raise DimensionMismatch(f"vectors of length {vectors.shape[1]} in a dim-{m.dim} module")
    space = start if start is not None else Subspace.zero(f, m.dim)
    res = space.residue(vectors)
    frontier = Subspace.span(f, m.dim, res).basis
    while frontier.shape[0]:
        space = Subspace.span(f, m.dim, np.vstack([space.basis, frontier]))
        if space.is_full():
            break
        res = space.residue(m.apply_all(frontier))
        frontier = Subspace.span(f, m.dim, res).basis
    return space


def is_invariant(m: ModuleRep, s: Subspace) -> bool:
    if s.dim == 0:
        return True
    return s.contains(m.apply_all(s.basis))


def quotient_module(m: ModuleRep, s: Subspace):
    """Return (M/S, projection) on the complement (non-pivot) coordinates of S."""
    from .algebra import quotient_projection

    if not is_invariant(m, s):
        raise NotInvariant("quotient by a non-invariant subspace")
    f = m.field
    comp = s.complement_columns()
    proj = quotient_projection(s)
    d = m.algebra.dim
    q = len(comp)
    cols = m.actions[:, :, comp]  # images of the complement basis vectors
    acts = f.matmul(proj, cols.transpose(1, 0, 2).reshape(m.dim, d * q)).reshape(q, d, q).transpose(1, 0, 2)
    gens = None
    if m._generators is not None:
        gens = f.matmul(m._generators, proj.T)
    return ModuleRep(m.algebra, np.ascontiguousarray(acts), generators=gens), proj


def submodule_restrict(m: ModuleRep, s: Subspace):
    """Return (S as a module in its RREF basis, inclusion matrix n x dim S)."""
    if not is_invariant(m, s):
        raise NotInvariant("restriction to a non-invariant subspace")
    f = m.field
    k = s.dim
    d = m.algebra.dim
    incl = s.basis.T.copy()
    imgs = f.matmul(m.actions.reshape(d * m.dim, m.dim), incl).reshape(d, m.dim, k)
    acts = imgs[:, s.pivots, :]
    return ModuleRep(m.algebra, np.ascontiguousarray(acts)), incl


def ideal_action(ideal: IdealHandle, m: ModuleRep) -> Subspace:
    """The submodule I*M."""
    if ideal.algebra is not m.algebra and ideal.algebra != m.algebra:
        raise AlgebraMismatch("ideal and module over different algebras")
    f = m.field
    if ideal.space.dim == 0 or m.dim == 0:
        return Subspace.zero(f, m.dim)
    cols = [m.act(v).T for v in ideal.space.basis]
    return spin(m, np.vstack(cols))


# -- homomorphisms --------------------------------------------------------


@dataclass
class HomBasis:
    """Basis of Hom_A(source, target) as target.dim x source.dim matrices."""

    source: ModuleRep
    target: ModuleRep
    basis: np.ndarray  # (k, n_target, n_source)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def combine(self, coeffs) -> np.ndarray:
        f = self.source.field
        k, a, b = self.basis.shape
        if k == 0:
            return f.zeros((a, b))
        return f.matmul(np.asarray(coeffs, dtype=f.dtype).reshape(1, k), self.basis.reshape(k, a * b)).reshape(a, b)

    def random_element(self, rng) -> np.ndarray:
        f = self.source.field
        return self.combine([f.random_scalar(rng) for _ in range(self.dim)])


def intertwines(m: ModuleRep, n: ModuleRep, x: np.ndarray) -> bool:
    """X rho_M(b_i) = rho_N(b_i) X for all i."""
    f = m.field
    if x.shape != (n.dim, m.dim):
        return False
    if x.size == 0:
        return True
    left = f.matmul(x.reshape(1, n.dim, m.dim), m.actions)
    right = f.matmul(n.actions, x.reshape(1, n.dim, m.dim))
    return bool(np.all(left == right))


def hom_basis(m: ModuleRep, n: ModuleRep) -> HomBasis:
    """All module homomorphisms m -> n, via a presentation of m.

    With generators v_1..v_g of m, a hom is determined by the images
    w_j = phi(v_j), subject to sum_j rho_N(a_j) w_j = 0 for every relation
    (a_1..a_g) of m.  The returned basis is canonical (RREF of the
    flattened matrices).
    """
    _check_same_algebra(m, n)
    f = m.field
    d = m.algebra.dim
    nm, nn = m.dim, n.dim
    if nm == 0 or nn == 0:
        return HomBasis(m, n, f.zeros((0, nn, nm)))
    gens = m.generating_set
    g = gens.shape[0]
    # phi[:, j*d + i] = rho_M(b_i) v_j
    imgs = f.matmul(m.actions.reshape(d * nm, nm), gens.T).reshape(d, nm, g)
    phi = imgs.transpose(1, 2, 0).reshape(nm, g * d)
    relations = kernel_basis(f, phi).basis
    if relations.shape[0]:
        r = relations.reshape(-1, d)
        blocks = f.matmul(r, n.actions.reshape(d, nn * nn)).reshape(-1, g, nn, nn)
        eqs = blocks.transpose(0, 2, 1, 3).reshape(-1, g * nn)
        sols = kernel_basis(f, eqs).basis
    else:
        sols = f.eye(g * nn)
    s = sols.shape[0]
    if s == 0:
        return HomBasis(m, n, f.zeros((0, nn, nm)))
    y = solve(f, phi, f.eye(nm))  # (g*d, nm): e_k = sum rho(a) v_j
    w = sols.reshape(s * g, nn)
    t = f.matmul(n.actions.reshape(d * nn, nn), w.T).reshape(d, nn, s, g)
    t = t.transpose(2, 1, 3, 0).reshape(s * nn, g * d)
    mats = f.matmul(t, y).reshape(s, nn * nm)
    canon, piv = rref(f, mats)
    return HomBasis(m, n, canon[: len(piv)].reshape(len(piv), nn, nm))


def hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    return hom_basis(m, n).dim


class EndoMatrix:
    """An endomorphism of a module; the intertwining identity is verified on construction."""

    def __init__(self, module: ModuleRep, matrix):
        matrix = np.asarray(matrix, dtype=module.field.dtype)
        if not intertwines(module, module, matrix):
            raise NotEndomorphism("matrix does not commute with the action")
        self.module = module
        self.matrix = matrix

    def __repr__(self):
        return f"EndoMatrix(dim={self.module.dim})"


def end_algebra(m: ModuleRep):
    """Return (End_A(m) as AlgebraData, HomBasis) with coordinates in the HomBasis."""
    if m.dim == 0:
        raise ZeroModule("End of the zero module")
    hb = hom_basis(m, m)
    alg, _ = algebra_from_endos(m.field, hb.basis)
    return alg, hb


def radical_of_module(m: ModuleRep, simples) -> Subspace:
    """Intersection of kernels of all homs from m to the given simple modules."""
    f = m.field
    simples = list(simples)
    if m.dim and not simples:
        raise IncompleteSimples("need the complete list of simple modules")
    rows = [hom_basis(m, s).basis.reshape(-1, m.dim) for s in simples]
    rows = [r for r in rows if r.shape[0]]
    if not rows:
        return Subspace.full(f, m.dim)
    return kernel_basis(f, np.vstack(rows))


def covering_maps(m: ModuleRep, gens: np.ndarray) -> np.ndarray:
    """pi: A^g -> m sending the unit of the j-th copy to gens[j]; shape (n, g*d)."""
    f = m.field
    d = m.algebra.dim
    g = gens.shape[0]
    # column j*d + i is rho(b_i) gens[j]
    imgs = f.matmul(m.actions.reshape(d * m.dim, m.dim), gens.T).reshape(d, m.dim, g)
    return imgs.transpose(1, 2, 0).reshape(m.dim, g * d)


def is_projective(m: ModuleRep) -> Certificate:
    """Split the free cover A^g -> m, or report why no section exists.

    Positive: ProjectiveBySection with payload ``generators`` and ``sigma``
    (a module map m -> A^g with pi sigma = id).  Negative:
    NotProjectiveWitness with a functional ``witness`` on the coefficient
    system that kills every pi_j h_t but not the identity.
    """
    f = m.field
    a = m.algebra
    d = a.dim
    n = m.dim
    if n == 0:
        return Certificate(PROJECTIVE_BY_SECTION, {"generators": f.zeros((0, 0)), "sigma": f.zeros((0, 0))})
    gens = m.generating_set
    g = gens.shape[0]
    pi = covering_maps(m, gens)
    hb = hom_basis(m, regular_module(a))
    t = hb.dim
    cols = []
    for j in range(g):
        pij = pi[:, j * d : (j + 1) * d]
        for h in hb.basis:
            cols.append(f.matmul(pij, h).reshape(-1))
    target = f.eye(n).reshape(-1)
    coeff = np.array(cols, dtype=f.dtype).T.reshape(n * n, g * t) if cols else f.zeros((n * n, 0))
    try:
        c = solve(f, coeff, target)
    except NoSolution:
        ker = left_kernel(f, coeff)
        dots = f.matmul(ker.basis, target.reshape(-1, 1)).reshape(-1)
        witness = ker.basis[int(np.flatnonzero(dots)[0])]
        return Certificate(NOT_PROJECTIVE_WITNESS, {"generators": gens, "witness": witness, "hom_dim": t})
    sigma = f.zeros((g * d, n))
    for j in range(g):
        sigma[j * d : (j + 1) * d] = hb.combine(c[j * t : (j + 1) * t]) if t else f.zeros((d, n))
    return Certificate(PROJECTIVE_BY_SECTION, {"generators": gens, "sigma": sigma})


def verify_projective_section(m: ModuleRep, cert: Certificate) -> bool:
    f = m.field
    gens = cert.payload["generators"]
    sigma = cert.payload["sigma"]
    if m.dim == 0:
        return True
    g = gens.shape[0]
    free = free_module(m.algebra, g)
    pi = covering_maps(m, gens)
    return (
        intertwines(m, free, sigma)
        and intertwines(free, m, pi)
        and bool(np.all(f.matmul(pi, sigma) == f.eye(m.dim)))
    )


# -- endomorphisms --------------------------------------------------------


def _as_endo(m: ModuleRep, theta) -> np.ndarray:
    if isinstance(theta, EndoMatrix):
        return theta.matrix
    return EndoMatrix(m, theta).matrix


def fitting_split(m: ModuleRep, theta):
    """(ker theta^n, im theta^n) with n = dim m."""
    f = m.field
    t = _as_endo(m, theta)
    tn = matrix_power(f, t, m.dim)
    ker = kernel_basis(f, tn)
    im = Subspace.span(f, m.dim, tn.T)
    return ker, im


@dataclass(frozen=True)
class EndoClass:
    kind: str  # "nilpotent", "invertible" or "neither"
    index: int | None = None

    def __str__(self):
        return f"Nilpotent({self.index})" if self.kind == "nilpotent" else self.kind.capitalize()


def classify_endo(m: ModuleRep, theta) -> EndoClass:
    f = m.field
    t = _as_endo(m, theta)
    n = m.dim
    if rank(f, t) == n:
        return EndoClass("invertible")
    power = t
    for k in range(1, n + 1):
        if f.is_zero(power):
            return EndoClass("nilpotent", k)
        power = f.matmul(power, t)
    return EndoClass("neither")


def find_generator(m: ModuleRep, seed: int = 0, budget: int = 64):
    """A vector generating m, or None after ``budget`` random attempts."""
    f = m.field
    if m.dim == 0:
        return None
    candidates = []
    if m._generators is not None and m._generators.shape[0] == 1:
        candidates.append(m._generators[0])
    candidates.extend(f.eye(m.dim))
    for v in candidates:
        if spin(m, v).is_full():
            return v
    rng = random.Random(seed)
    for _ in range(budget):
        v = f.random_array(rng, m.dim)
        if spin(m, v).is_full():
            return v
    return None
