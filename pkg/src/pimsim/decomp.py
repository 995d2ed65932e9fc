"""Submodule search, simplicity, composition series, radicals and decompositions over F_p.

Every decision is backed by a :class:`~pimsim.certificates.Certificate`.
Randomized steps draw from ``random.Random(seed)``; the candidate element
stream is the algebra basis b_0, ..., b_{d-1} followed by uniformly random
coordinate vectors.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraData, IdealHandle, nilpotency_index, quotient_algebra
from .certificates import (
    DECOMPOSABLE_WITNESS,
    INDECOMPOSABLE_BY_LOCAL_END,
    NOT_SIMPLE_WITNESS,
    SIMPLE_BY_EXHAUSTIVE_SPIN,
    SIMPLE_BY_NORTON,
    Certificate,
)
from .errors import (
    AlgebraMismatch,
    InternalInvariantViolation,
    NotApproxIdempotent,
    NotCertifiedSimple,
    SearchBudgetExceeded,
    UnsupportedField,
    ZeroModule,
)
from .linalg import Subspace, char_poly, kernel_basis, min_poly, rank
from .module import (
    EndoMatrix,
    ModuleRep,
    end_algebra,
    fitting_split,
    hom_basis,
    regular_module,
    spin,
    submodule_restrict,
    quotient_module,
    transpose_module,
)
from .poly import Poly, poly_factor, poly_roots, poly_xgcd

EXHAUSTIVE_LIMIT = 4096
DEFAULT_BUDGET = 64
MAX_NORTON_POINTS = 20000


def _require_prime_field(field):
    if not field.is_prime_field:
        raise UnsupportedField(f"decision procedures need a prime field, got {field}")


def candidate_elements(a: AlgebraData, rng: random.Random, budget: int):
    """Frozen candidate stream: basis elements, then seeded random elements."""
    f = a.field
    for k in range(budget):
        if k < a.dim:
            yield a.basis_vector(k)
        else:
            yield f.random_array(rng, a.dim)


def projective_points(field, basis: np.ndarray):
    """One representative per 1-dimensional subspace of the row span of ``basis``."""
    k = basis.shape[0]
    p = field.p
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            coeffs = np.zeros(k, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1 :] = tail
            yield field.matmul(coeffs.reshape(1, k), basis).reshape(-1)


def _fq_points(field, theta: np.ndarray, w_space: Subspace, deg: int):
    """Representatives of the F_q-lines of W = ker f(theta), q = p^deg.

    W is a vector space over F_p[theta]/(f); two vectors on the same F_q-line
    spin to the same submodule, so one representative per line suffices.
    """
    p = field.p
    # F_q-basis u_1..u_m of W and the F_p-basis theta^t u_j
    blocks = []
    covered = Subspace.zero(field, w_space.ambient_dim)
    for v in w_space.basis:
        if covered.contains(v):
            continue
        orbit = [v]
        for _ in range(deg - 1):
            orbit.append(field.matmul(theta, orbit[-1]))
        orbit = np.array(orbit, dtype=field.dtype)
        blocks.append(orbit)
        covered = covered + Subspace.span(field, w_space.ambient_dim, orbit)
    m = len(blocks)
    for lead in range(m):
        for tail in itertools.product(range(p), repeat=deg * (m - lead - 1)):
            vec = blocks[lead][0].copy()
            for j in range(lead + 1, m):
                c = np.array(tail[(j - lead - 1) * deg : (j - lead) * deg], dtype=np.int64)
                vec = field.reduce(vec + field.matmul(c.reshape(1, deg), blocks[j]).reshape(-1))
            yield vec


def _point_count(p, deg, wdim):
    q = p**deg
    m = wdim // deg
    return (q**m - 1) // (q - 1)


def _not_simple(space: Subspace) -> Certificate:
    return Certificate(NOT_SIMPLE_WITNESS, {"subspace": space.basis})


def find_proper_submodule(m: ModuleRep, seed: int = 0, budget: int = DEFAULT_BUDGET):
    """A proper nonzero submodule, or None when the candidate budget is exhausted.

    For each candidate element a and each irreducible factor f of the
    characteristic polynomial of rho(a), the basis vectors of ker f(rho(a))
    are spun.  The first candidate giving any proper spin wins; among its
    spins the smallest (earliest on ties) is returned.
    """
    _require_prime_field(m.field)
    if m.dim == 0:
        raise ZeroModule("submodule search in the zero module")
    rng = random.Random(seed)
    for a in candidate_elements(m.algebra, rng, budget):
        theta = m.act(a)
        best = None
        for f, _ in poly_factor(char_poly(m.field, theta), seed):
            w = kernel_basis(m.field, f.eval_matrix(theta))
            for v in w.basis:
                s = spin(m, v)
                if not s.is_full() and (best is None or s.dim < best.dim):
                    best = s
        if best is not None:
            return best
    return None


@dataclass
class _NortonChoice:
    element: np.ndarray
    theta: np.ndarray
    factor: Poly
    kernel: Subspace
    points: int


def _norton(m: ModuleRep, rng: random.Random, budget: int) -> Certificate:
    f = m.field
    best = None
    for a in candidate_elements(m.algebra, rng, budget):
        theta = m.act(a)
        for fac, _ in poly_factor(char_poly(f, theta), rng.getrandbits(32)):
            fth = fac.eval_matrix(theta)
            w = kernel_basis(f, fth)
            s = spin(m, w.basis[0])
            if not s.is_full():
                return _not_simple(s)
            pts = _point_count(f.p, fac.degree, w.dim)
            if best is None or pts < best.points:
                best = _NortonChoice(a, theta, fac, w, pts)
        if best is not None and best.points == 1:
            break
    if best is None or best.points > MAX_NORTON_POINTS:
        raise SearchBudgetExceeded(f"no small Norton kernel among {budget} candidates")
    for v in _fq_points(f, best.theta, best.kernel, best.factor.degree):
        s = spin(m, v)
        if not s.is_full():
            return _not_simple(s)
    fth_t = best.factor.eval_matrix(best.theta).T
    wt = kernel_basis(f, fth_t)
    dual = transpose_module(m)
    st = spin(dual, wt.basis[0])
    if not st.is_full():
        # the annihilator of a proper dual submodule is a proper submodule
        return _not_simple(kernel_basis(f, st.basis))
    return Certificate(
        SIMPLE_BY_NORTON,
        {
            "element": best.element,
            "factor": [int(c) for c in best.factor.coeffs],
            "kernel": best.kernel.basis,
            "dual_vector": wt.basis[0],
        },
    )


def _exhaustive(m: ModuleRep) -> Certificate:
    f = m.field
    count = 0
    for v in projective_points(f, f.eye(m.dim)):
        count += 1
        s = spin(m, v)
        if not s.is_full():
            return _not_simple(s)
    return Certificate(SIMPLE_BY_EXHAUSTIVE_SPIN, {"points": count})


def is_simple(m: ModuleRep, seed: int = 0, method: str = "auto", budget: int = DEFAULT_BUDGET) -> Certificate:
    """Decide simplicity.

    ``method="auto"`` runs the Norton test and, when p^dim <= 4096 and the
    module is simple, re-proves it by spinning every projective point;
    ``"norton"`` and ``"exhaustive"`` force one route.
    """
    _require_prime_field(m.field)
    if m.dim == 0:
        raise ZeroModule("the zero module is not simple")
    return _is_simple(m, random.Random(seed), method, budget)


def _is_simple(m, rng, method="auto", budget=DEFAULT_BUDGET):
    if method == "exhaustive":
        return _exhaustive(m)
    cert = _norton(m, rng, budget)
    if method == "norton" or not cert.holds or m.field.p ** m.dim > EXHAUSTIVE_LIMIT:
        return cert
    ex = _exhaustive(m)
    if not ex.holds:
        raise InternalInvariantViolation("Norton and exhaustive spin disagree")
    return ex


# -- composition series ---------------------------------------------------


@dataclass
class CompSeries:
    module: ModuleRep
    chain: list  # ascending Subspaces 0 = M_0 < ... < M_r = M
    factors: list  # ModuleRep, factor j is M_{j+1}/M_j
    certificates: list
    factor_class_ids: list

    @property
    def length(self):
        return len(self.factors)

    def class_multiset(self):
        out = {}
        for c in self.factor_class_ids:
            out[c] = out.get(c, 0) + 1
        return out

    def class_representatives(self):
        reps = {}
        for c, fac in zip(self.factor_class_ids, self.factors):
            reps.setdefault(c, fac)
        return [reps[c] for c in sorted(reps)]


def _chop(m: ModuleRep, rng):
    """Return (chain, factors, certs) for m, chain in m's coordinates."""
    f = m.field
    cert = _is_simple(m, rng)
    if cert.holds:
        return [Subspace.zero(f, m.dim), Subspace.full(f, m.dim)], [m], [cert]
    u = Subspace.span(f, m.dim, cert.payload["subspace"])
    sub, incl = submodule_restrict(m, u)
    quo, _ = quotient_module(m, u)
    comp = u.complement_columns()
    c1, f1, k1 = _chop(sub, rng)
    c2, f2, k2 = _chop(quo, rng)
    chain = [s.image(incl) for s in c1]
    for s in c2[1:]:
        lifted = f.zeros((s.dim, m.dim))
        lifted[:, comp] = s.basis
        chain.append(u + Subspace.span(f, m.dim, lifted))
    return chain, f1 + f2, k1 + k2


def group_classes(items, same, key=lambda x: x.dim):
    """Class ids by (key, first discovery) given an equivalence test."""
    reps = []  # (first index, item)
    labels = []
    for idx, it in enumerate(items):
        for r, (_, rep) in enumerate(reps):
            if key(rep) == key(it) and same(rep, it):
                labels.append(r)
                break
        else:
            labels.append(len(reps))
            reps.append((idx, it))
    order = sorted(range(len(reps)), key=lambda r: (key(reps[r][1]), reps[r][0]))
    rank_of = {r: k for k, r in enumerate(order)}
    return [rank_of[l] for l in labels]


def composition_series(m: ModuleRep, seed: int = 0) -> CompSeries:
    _require_prime_field(m.field)
    rng = random.Random(seed)
    if m.dim == 0:
        return CompSeries(m, [Subspace.zero(m.field, 0)], [], [], [])
    chain, factors, certs = _chop(m, rng)
    ids = group_classes(factors, iso_simple)
    return CompSeries(m, chain, factors, certs, ids)


# -- radicals -------------------------------------------------------------


def annihilator(a: AlgebraData, modules) -> Subspace:
    """{x in A : rho_S(x) = 0 for every S}."""
    f = a.field
    rows = [s.actions.reshape(a.dim, -1).T for s in modules if s.dim]
    if not rows:
        return Subspace.full(f, a.dim)
    return kernel_basis(f, np.vstack(rows))


def simple_modules(a: AlgebraData, seed: int = 0):
    """(composition series of the regular module, one simple per class in class order)."""
    _require_prime_field(a.field)
    series = composition_series(regular_module(a), seed)
    return series, series.class_representatives()


def algebra_radical(a: AlgebraData, seed: int = 0):
    """Return (radical as a two-sided IdealHandle, simple modules)."""
    _, simples = simple_modules(a, seed)
    return IdealHandle(a, annihilator(a, simples), "two-sided"), simples


def radical_nilpotency_index(a: AlgebraData, rad: IdealHandle) -> int:
    idx = nilpotency_index(a, rad.space)
    if idx is None:
        raise InternalInvariantViolation("radical is not nilpotent")
    return idx


# -- indecomposability ----------------------------------------------------


def _frobenius_matrix(d_alg: AlgebraData) -> np.ndarray:
    f = d_alg.field
    cols = [d_alg.power(d_alg.basis_vector(i), f.p) for i in range(d_alg.dim)]
    return np.array(cols, dtype=f.dtype).T


def is_commutative(a: AlgebraData) -> bool:
    return bool(np.all(a.table == a.table.transpose(1, 0, 2)))


def field_check(d_alg: AlgebraData):
    """(commutative, frobenius_injective, fixed_dim) for a finite-dim F_p-algebra."""
    f = d_alg.field
    comm = is_commutative(d_alg)
    frob = _frobenius_matrix(d_alg)
    inj = rank(f, frob) == d_alg.dim
    fixed = kernel_basis(f, f.reduce(frob - f.eye(d_alg.dim)))
    return comm, inj, fixed


def _eval_in_algebra(d_alg: AlgebraData, poly: Poly, x) -> np.ndarray:
    return d_alg.field.matmul(poly.eval_matrix(d_alg.combine_ops(x)), d_alg.unit)


def _idempotent_mod_radical(d_alg: AlgebraData, rng, budget=DEFAULT_BUDGET) -> np.ndarray:
    """A nontrivial idempotent of the semisimple algebra D (not a field)."""
    f = d_alg.field
    comm, inj, fixed = field_check(d_alg)
    if comm:
        if not inj:
            raise InternalInvariantViolation("quotient by the radical is not reduced")
        unit_space = Subspace.span(f, d_alg.dim, d_alg.unit)
        x = next(v for v in fixed.basis if not unit_space.contains(v))
        mp = min_poly(f, d_alg.combine_ops(x))
        roots = poly_roots(mp)
        if len(roots) < 2 or len(roots) != mp.degree:
            raise InternalInvariantViolation("Frobenius-fixed element with non-split minimal polynomial")
        t = Poly.x(f)
        lag = Poly.const(f, 1)
        r0 = roots[0]
        for r in roots[1:]:
            lag = lag * (t - r).scale(f.inv(r0 - r))
        return _eval_in_algebra(d_alg, lag, x)
    for _ in range(budget):
        x = f.random_array(rng, d_alg.dim)
        mp = min_poly(f, d_alg.combine_ops(x))
        factors = poly_factor(mp, rng.getrandbits(32))
        if len(factors) < 2:
            continue
        g = factors[0][0] ** factors[0][1]
        h = mp // g
        _, u, _ = poly_xgcd(g, h)
        return _eval_in_algebra(d_alg, u * g, x)
    raise SearchBudgetExceeded(f"no split minimal polynomial among {budget} samples")


def lift_idempotent(m: ModuleRep, e_approx: np.ndarray, nilpotency: int) -> EndoMatrix:
    """Refine an idempotent modulo a nilpotent ideal of End(m) via e <- 3e^2 - 2e^3."""
    f = m.field
    e = np.asarray(e_approx, dtype=f.dtype)
    steps = max(1, math.ceil(math.log2(max(nilpotency, 1)))) + 1
    for _ in range(steps):
        e2 = f.matmul(e, e)
        if np.all(e2 == e):
            break
        e3 = f.matmul(e2, e)
        e = f.reduce(3 * e2 - 2 * e3) if f.is_prime_field else 3 * e2 - 2 * e3
    if np.any(f.matmul(e, e) != e):
        raise NotApproxIdempotent("iteration did not converge; input is not idempotent modulo a nilpotent ideal")
    return EndoMatrix(m, e)


def is_indecomposable(m: ModuleRep, seed: int = 0) -> Certificate:
    """IndecomposableByLocalEnd, or DecomposableWitness carrying an idempotent."""
    _require_prime_field(m.field)
    if m.dim == 0:
        raise ZeroModule("the zero module is not indecomposable")
    return _is_indecomposable(m, random.Random(seed))


def _is_indecomposable(m: ModuleRep, rng) -> Certificate:
    f = m.field
    e_alg, hb = end_algebra(m)
    rad, _ = algebra_radical(e_alg, rng.getrandbits(32))
    if rad.space.dim == e_alg.dim:
        raise InternalInvariantViolation("radical of End equals End")
    d_alg, proj = quotient_algebra(e_alg, rad)
    comm, inj, fixed = field_check(d_alg)
    if comm and inj and fixed.dim == 1:
        return Certificate(INDECOMPOSABLE_BY_LOCAL_END, {"end_basis": hb.basis, "radical": rad.space.basis})
    e_bar = _idempotent_mod_radical(d_alg, rng)
    comp = rad.space.complement_columns()
    lift = f.zeros(e_alg.dim)
    lift[comp] = e_bar
    nu = nilpotency_index(e_alg, rad.space) or e_alg.dim + 1
    e = lift_idempotent(m, hb.combine(lift), nu)
    if f.is_zero(e.matrix) or np.all(e.matrix == f.eye(m.dim)):
        raise InternalInvariantViolation("lifted idempotent is trivial")
    return Certificate(DECOMPOSABLE_WITNESS, {"idempotent": e.matrix})


@dataclass
class DecompositionReport:
    module: ModuleRep
    summands: list  # (ModuleRep, Subspace embedding in module coordinates)
    certificates: list
    class_ids: list
    embeddings: list = dc_field(default_factory=list)  # inclusion matrices n x dim_summand

    def class_multiset(self):
        out = {}
        for c in self.class_ids:
            out[c] = out.get(c, 0) + 1
        return out


def indecomposable_decomposition(m: ModuleRep, seed: int = 0, iso_budget: int = DEFAULT_BUDGET) -> DecompositionReport:
    """Split m into certified indecomposable summands."""
    _require_prime_field(m.field)
    f = m.field
    rng = random.Random(seed)
    summands, certs, incls = [], [], []
    if m.dim == 0:
        return DecompositionReport(m, [], [], [], [])

    def rec(mod, incl):
        cert = _is_indecomposable(mod, rng)
        if cert.holds:
            summands.append(mod)
            certs.append(cert)
            incls.append(incl)
            return
        e = cert.payload["idempotent"]
        gens = mod.generating_set
        ker, im = fitting_split(mod, e)
        one_minus_e = f.reduce(f.eye(mod.dim) - e)
        for part, proj in ((im, e), (ker, one_minus_e)):
            sub, sub_incl = submodule_restrict(mod, part)
            hint = part.coordinates(f.matmul(gens, proj.T))
            rec(ModuleRep(mod.algebra, sub.actions, generators=hint), f.matmul(incl, sub_incl))

    rec(m, f.eye(m.dim))
    mods = summands
    iso_rng = random.Random(rng.getrandbits(32))
    ids = group_classes(
        mods, lambda x, y: iso_modules(x, y, iso_rng.getrandbits(32), iso_budget, hint="indecomposable").kind == "isomorphic"
    )
    spaces = [Subspace.span(f, m.dim, inc.T) for inc in incls]
    return DecompositionReport(m, list(zip(mods, spaces)), certs, ids, incls)


# -- isomorphism ----------------------------------------------------------


def iso_simple(s: ModuleRep, t: ModuleRep, certs=None) -> bool:
    """Isomorphism of simple modules: true iff some nonzero hom exists.

    ``certs``, when given, are simplicity certificates for (s, t); a
    non-positive one raises NotCertifiedSimple.
    """
    if certs is not None and not all(c.holds for c in certs):
        raise NotCertifiedSimple("iso_simple needs certified simple modules")
    if s.algebra is not t.algebra and s.algebra != t.algebra:
        raise AlgebraMismatch("modules over different algebras")
    if s.dim != t.dim:
        return False
    hb = hom_basis(s, t)
    if hb.dim == 0:
        return False
    if rank(s.field, hb.basis[0]) != s.dim:
        raise InternalInvariantViolation("nonzero hom between simples is not invertible")
    return True


@dataclass
class IsoResult:
    kind: str  # "isomorphic", "not_isomorphic", "unknown"
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.kind == "isomorphic"


def iso_modules(m: ModuleRep, n: ModuleRep, seed: int = 0, budget: int = DEFAULT_BUDGET, hint: str | None = None, radical: IdealHandle | None = None) -> IsoResult:
    """Semi-decide isomorphism.

    ``hint="simple"`` uses :func:`iso_simple`; ``hint="pim"`` (with the
    algebra radical) compares tops; ``hint="indecomposable"`` decides
    exactly for modules with local endomorphism rings.  Otherwise random homs
    are tested for invertibility.
    """
    from .module import ideal_action

    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise AlgebraMismatch("modules over different algebras")
    f = m.field
    if m.dim != n.dim:
        return IsoResult("not_isomorphic", reason="dimension")
    if m.dim == 0:
        return IsoResult("isomorphic", f.zeros((0, 0)))
    hmn = hom_basis(m, n)
    hnm = hom_basis(n, m)
    if hmn.dim != hnm.dim:
        return IsoResult("not_isomorphic", reason="hom-dimension asymmetry")
    if hmn.dim == 0:
        return IsoResult("not_isomorphic", reason="no homomorphisms")
    if hint == "simple":
        ok = iso_simple(m, n)
        return IsoResult("isomorphic", hmn.basis[0]) if ok else IsoResult("not_isomorphic", reason="simple, no hom")
    if hint == "pim" and radical is not None:
        tm, _ = quotient_module(m, ideal_action(radical, m))
        tn, _ = quotient_module(n, ideal_action(radical, n))
        if not iso_simple(tm, tn):
            return IsoResult("not_isomorphic", reason="non-isomorphic tops")
    for x in hmn.basis:
        if rank(f, x) == m.dim:
            return IsoResult("isomorphic", x)
    if hint == "indecomposable":
        # End(m) is local, so every composite g f lies in its radical (a
        # subspace) unless some basis composite g_i f_j is already invertible
        for x in hmn.basis:
            for y in hnm.basis:
                if rank(f, f.matmul(y, x)) == m.dim:
                    return IsoResult("isomorphic", x)
        return IsoResult("not_isomorphic", reason="every composite n -> m -> n is nilpotent")
    rng = random.Random(seed)
    for _ in range(budget):
        x = hmn.random_element(rng)
        if rank(f, x) == m.dim:
            return IsoResult("isomorphic", x)
    if hint == "pim":
        raise InternalInvariantViolation("PIMs with isomorphic tops but no invertible hom found")
    return IsoResult("unknown", reason=f"no invertible hom among {budget} samples")
