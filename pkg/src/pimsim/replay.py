"""Re-verify certificates from their payloads, without any search."""

from __future__ import annotations

import numpy as np

from . import certificates as C
from .algebra import algebra_from_endos, is_ideal, nilpotency_index, quotient_algebra, IdealHandle
from .certificates import Certificate
from .decomp import _fq_points, field_check, projective_points
from .linalg import Subspace, kernel_basis
from .module import ModuleRep, hom_basis, ideal_action, intertwines, is_invariant, quotient_module, spin, transpose_module, verify_projective_section
from .poly import Poly, poly_factor


def replay(m: ModuleRep, cert: Certificate) -> bool:
    """True iff the certificate's claim about ``m`` checks out from its payload."""
    check = _CHECKS.get(cert.kind)
    if check is None:
        return False
    try:
        return bool(check(m, cert.payload))
    except (KeyError, ValueError, IndexError) as exc:
        del exc
        return False


def _exhaustive(m, payload):
    f = m.field
    count = 0
    for v in projective_points(f, f.eye(m.dim)):
        count += 1
        if not spin(m, v).is_full():
            return False
    return count == payload["points"]


def _norton(m, payload):
    f = m.field
    fac = Poly(f, payload["factor"])
    facs = poly_factor(fac)
    if len(facs) != 1 or facs[0][1] != 1 or facs[0][0] != fac.monic():
        return False
    theta = m.act(payload["element"])
    fth = fac.eval_matrix(theta)
    w = kernel_basis(f, fth)
    if w.dim == 0 or w != Subspace.span(f, m.dim, payload["kernel"]):
        return False
    for v in _fq_points(f, theta, w, fac.degree):
        if not spin(m, v).is_full():
            return False
    u = np.asarray(payload["dual_vector"], dtype=f.dtype)
    if f.is_zero(u) or not f.is_zero(f.matmul(fth.T, u)):
        return False
    return spin(transpose_module(m), u).is_full()


def _not_simple(m, payload):
    s = Subspace.span(m.field, m.dim, payload["subspace"])
    return 0 < s.dim < m.dim and is_invariant(m, s)


def _local_end(m, payload):
    f = m.field
    basis = payload["end_basis"]
    if basis.shape[0] != hom_basis(m, m).dim:
        return False
    if not all(intertwines(m, m, x) for x in basis):
        return False
    e_alg, _ = algebra_from_endos(f, basis)
    rad = Subspace.span(f, e_alg.dim, payload["radical"]) if payload["radical"].size else Subspace.zero(f, e_alg.dim)
    if rad.dim >= e_alg.dim or not is_ideal(e_alg, rad) or nilpotency_index(e_alg, rad) is None:
        return False
    d_alg, _ = quotient_algebra(e_alg, IdealHandle(e_alg, rad, check=False))
    comm, inj, fixed = field_check(d_alg)
    return comm and inj and fixed.dim == 1


def _simple_top(m, payload):
    a = m.algebra
    f = m.field
    rad = Subspace.span(f, a.dim, payload["radical"]) if payload["radical"].size else Subspace.zero(f, a.dim)
    if not is_ideal(a, rad) or nilpotency_index(a, rad) is None:
        return False
    t, _ = quotient_module(m, ideal_action(IdealHandle(a, rad, check=False), m))
    inner = payload["top_certificate"]
    return t.dim > 0 and inner.holds and replay(t, inner)


def _section(m, payload):
    return verify_projective_section(m, Certificate(C.PROJECTIVE_BY_SECTION, payload))


def _decomposable(m, payload):
    f = m.field
    e = np.asarray(payload["idempotent"], dtype=f.dtype)
    return (
        intertwines(m, m, e)
        and bool(np.all(f.matmul(e, e) == e))
        and not f.is_zero(e)
        and not bool(np.all(e == f.eye(m.dim)))
    )


def _not_projective(m, payload):
    from .module import covering_maps, regular_module

    f = m.field
    d = m.algebra.dim
    gens = payload["generators"]
    pi = covering_maps(m, gens)
    hb = hom_basis(m, regular_module(m.algebra))
    cols = [f.matmul(pi[:, j * d : (j + 1) * d], h).reshape(-1) for j in range(gens.shape[0]) for h in hb.basis]
    y = np.asarray(payload["witness"], dtype=f.dtype)
    target = f.eye(m.dim).reshape(-1)
    kills = all(f.matmul(y.reshape(1, -1), c.reshape(-1, 1))[0, 0] == 0 for c in cols)
    return kills and f.matmul(y.reshape(1, -1), target.reshape(-1, 1))[0, 0] != 0


_CHECKS = {
    C.SIMPLE_BY_EXHAUSTIVE_SPIN: _exhaustive,
    C.SIMPLE_BY_NORTON: _norton,
    C.NOT_SIMPLE_WITNESS: _not_simple,
    C.INDECOMPOSABLE_BY_LOCAL_END: _local_end,
    C.INDECOMPOSABLE_BY_SIMPLE_TOP: _simple_top,
    C.PROJECTIVE_BY_SECTION: _section,
    C.DECOMPOSABLE_WITNESS: _decomposable,
    C.NOT_PROJECTIVE_WITNESS: _not_projective,
}
