"""Projective indecomposables, their tops, and the PIM <-> simple bijection."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraData, IdealHandle
from .certificates import INDECOMPOSABLE_BY_SIMPLE_TOP, Certificate
from .decomp import (
    _require_prime_field,
    annihilator,
    field_check,
    group_classes,
    indecomposable_decomposition,
    is_indecomposable,
    is_simple,
    iso_simple,
    simple_modules,
)
from .errors import InternalInvariantViolation, StructureViolation
from .linalg import Subspace, kernel_basis, rank
from .module import (
    ModuleRep,
    direct_sum,
    end_algebra,
    hom_basis,
    ideal_action,
    is_projective,
    quotient_module,
    regular_module,
    spin,
    verify_projective_section,
)


@dataclass
class SimpleRecord:
    module: ModuleRep
    class_id: int
    end_field_degree: int
    certificate: Certificate

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class PimRecord:
    module: ModuleRep
    class_id: int
    multiplicity_in_regular: int
    generator: np.ndarray
    top_class_id: int
    unique_maximal: Subspace
    certificates: dict = dc_field(default_factory=dict)
    embedding: Subspace | None = None

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class BijectionTable:
    algebra: AlgebraData
    seed: int
    radical: IdealHandle
    pims: list
    simples: list
    matching: list  # matching[i] = simple class paired with PIM class i
    hom_dims: list  # hom_dims[i][j] = dim Hom(P_i, S_j)
    series: object = None
    verification: dict = dc_field(default_factory=dict)

    @property
    def pairs(self):
        return [(p, self.simples[j]) for p, j in zip(self.pims, self.matching)]


@dataclass
class FieldReport:
    degree: int
    commutative: bool
    frobenius_injective: bool
    fixed_dim: int


def end_simple_structure(s) -> FieldReport:
    """End(S) of a simple module over F_p is F_{p^degree}; checks the field structure."""
    module = s.module if isinstance(s, SimpleRecord) else s
    _require_prime_field(module.field)
    e_alg, _ = end_algebra(module)
    comm, inj, fixed = field_check(e_alg)
    if not (comm and inj and fixed.dim == 1):
        raise StructureViolation(f"End(S) is not a field: commutative={comm}, frobenius injective={inj}, fixed dim={fixed.dim}")
    return FieldReport(e_alg.dim, comm, inj, fixed.dim)


def top(p) -> ModuleRep:
    """P / rad(A) P for a PimRecord (or (module, radical) pair)."""
    if isinstance(p, PimRecord):
        module = p.module
        sub = p.unique_maximal
    else:
        module, rad = p
        sub = ideal_action(rad, module)
    return quotient_module(module, sub)[0]


def _simple_class_of(module: ModuleRep, simples) -> int:
    for rec in simples:
        if iso_simple(module, rec.module):
            return rec.class_id
    raise InternalInvariantViolation("module is not isomorphic to any listed simple")


def pims(a: AlgebraData, seed: int = 0, radical: IdealHandle | None = None, simples=None):
    """PIM classes of A from a certified decomposition of the regular module."""
    _require_prime_field(a.field)
    if radical is None or simples is None:
        series, reps = simple_modules(a, seed)
        radical = IdealHandle(a, annihilator(a, reps), "two-sided")
        simples = _simple_records(reps, series, seed)
    rng = random.Random(seed)
    dec = indecomposable_decomposition(regular_module(a), rng.getrandbits(32))
    mods = [m for m, _ in dec.summands]
    tops = [quotient_module(m, ideal_action(radical, m))[0] for m in mods]
    ids = group_classes(list(range(len(mods))), lambda i, j: iso_simple(tops[i], tops[j]), key=lambda i: mods[i].dim)
    records = []
    for cls in sorted(set(ids)):
        idx = ids.index(cls)
        m = mods[idx]
        gens = m.generating_set
        gen = gens[0] if gens.shape[0] == 1 else _cyclic_generator(m)
        umax = ideal_action(radical, m)
        top_cert = is_simple(tops[idx], rng.getrandbits(32))
        certs = {
            "projective": is_projective(m),
            "indecomposable": dec.certificates[idx],
            "top_simple": top_cert,
            "simple_top": Certificate(
                INDECOMPOSABLE_BY_SIMPLE_TOP,
                {"radical": radical.space.basis, "top_certificate": top_cert},
            )
            if top_cert.holds
            else top_cert,
        }
        records.append(
            PimRecord(
                module=m,
                class_id=cls,
                multiplicity_in_regular=ids.count(cls),
                generator=gen,
                top_class_id=_simple_class_of(tops[idx], simples),
                unique_maximal=umax,
                certificates=certs,
                embedding=dec.summands[idx][1],
            )
        )
    return records


def _cyclic_generator(m: ModuleRep):
    from .module import find_generator

    g = find_generator(m)
    if g is None:
        raise InternalInvariantViolation("projective indecomposable without a generator")
    return g


def _simple_records(reps, series, seed):
    out = []
    for cls, s in enumerate(reps):
        idx = series.factor_class_ids.index(cls)
        out.append(SimpleRecord(s, cls, end_simple_structure(s).degree, series.certificates[idx]))
    return out


def simples_of(a: AlgebraData, seed: int = 0):
    series, reps = simple_modules(a, seed)
    return _simple_records(reps, series, seed)


def projective_cover(s: SimpleRecord, table: BijectionTable) -> PimRecord:
    """The unique PIM class mapping onto s."""
    hits = [p for p in table.pims if hom_basis(p.module, s.module).dim > 0]
    if len(hits) != 1:
        raise InternalInvariantViolation(f"{len(hits)} PIM classes map onto the simple class {s.class_id}")
    return hits[0]


def bijection(a: AlgebraData, seed: int = 0) -> BijectionTable:
    """Pair PIM classes with simple classes by nonvanishing Hom."""
    _require_prime_field(a.field)
    series, reps = simple_modules(a, seed)
    radical = IdealHandle(a, annihilator(a, reps), "two-sided")
    simples = _simple_records(reps, series, seed)
    precs = pims(a, seed, radical, simples)
    hom_dims = [[hom_basis(p.module, s.module).dim for s in simples] for p in precs]
    matching = []
    for i, row in enumerate(hom_dims):
        nz = [j for j, h in enumerate(row) if h]
        if len(nz) != 1:
            raise InternalInvariantViolation(f"PIM class {i} maps onto {len(nz)} simple classes")
        matching.append(nz[0])
    if sorted(matching) != list(range(len(simples))) or len(precs) != len(simples):
        raise InternalInvariantViolation("Hom-pairing is not a bijection")
    return BijectionTable(a, seed, radical, precs, simples, matching, hom_dims, series)


def hom_dim_matrix(table: BijectionTable):
    """dim Hom(P_i, S_j), recomputed."""
    return [[hom_basis(p.module, s.module).dim for s in table.simples] for p in table.pims]


# -- verification ---------------------------------------------------------


@dataclass
class ClaimResult:
    passed: bool
    witness: str = ""


def _claim(results, name, ok, witness=""):
    results[name] = ClaimResult(bool(ok), "" if ok else witness)


def verify_table(table: BijectionTable, seed: int | None = None, samples: int = 4) -> dict:
    """Re-check every correspondence claim against a (possibly tampered) table."""
    seed = table.seed if seed is None else seed
    rng = random.Random(seed)
    a = table.algebra
    f = a.field
    res = {}
    P, S, sigma = table.pims, table.simples, table.matching

    _claim(res, "count_equal", len(P) == len(S), f"{len(P)} PIM classes vs {len(S)} simple classes")

    hd = hom_dim_matrix(table)
    bad = [(i, j, hd[i][j]) for i in range(len(P)) for j in range(len(S)) if (hd[i][j] != 0) != (j == sigma[i])]
    tops = [top(p) for p in P]
    top_bad = [(i, sigma[i]) for i in range(len(P)) if not iso_simple(tops[i], S[sigma[i]].module)]
    _claim(res, "pairing_characterization", not bad and not top_bad and len(set(sigma)) == len(sigma),
           f"hom mismatches (i, j, dim)={bad}, top mismatches={top_bad}")

    sep = [(i, k) for i in range(len(P)) for k in range(i + 1, len(P)) if iso_simple(tops[i], tops[k])]
    _claim(res, "tops_separate", not sep, f"isomorphic tops {sep}")

    cover_bad = []
    if table.series is not None:
        seen = set()
        for j, fac in enumerate(table.series.factors):
            hit = [s.class_id for s in S if iso_simple(fac, s.module)]
            if len(hit) != 1:
                cover_bad.append(("factor", j, hit))
            seen.update(hit)
        missing = [s.class_id for s in S if s.class_id not in seen]
        if missing:
            cover_bad.append(("unused simples", missing))
    _claim(res, "simple_coverage", not cover_bad, str(cover_bad))

    cyc = [i for i, p in enumerate(P) if not spin(p.module, p.generator).is_full()]
    _claim(res, "pims_cyclic", not cyc, f"generator fails to spin for {cyc}")

    umax_bad = []
    for i, p in enumerate(P):
        if p.unique_maximal != ideal_action(table.radical, p.module):
            umax_bad.append((i, "stored maximal differs from rad*P"))
        for s in S:
            hb = hom_basis(p.module, s.module)
            elems = list(hb.basis) + [hb.random_element(rng) for _ in range(samples if hb.dim else 0)]
            for x in elems:
                if f.is_zero(x):
                    continue
                if kernel_basis(f, x) != p.unique_maximal:
                    umax_bad.append((i, s.class_id))
                    break
    _claim(res, "unique_maximal", not umax_bad, str(umax_bad))

    law_bad = []
    for i, p in enumerate(P):
        for j, s in enumerate(S):
            want = s.end_field_degree if j == sigma[i] else 0
            if hd[i][j] != want:
                law_bad.append((i, j, hd[i][j], want))
        j = sigma[i]
        quo, proj = quotient_module(p.module, p.unique_maximal)
        psi = hom_basis(quo, S[j].module)
        width = S[j].module.dim * p.module.dim
        composed = f.zeros((psi.dim, width))
        for r, x in enumerate(psi.basis):
            composed[r] = f.matmul(x, proj).reshape(-1)
        phi = hom_basis(p.module, S[j].module)
        if psi.dim != phi.dim or (psi.dim and rank(f, composed) != phi.dim):
            law_bad.append((i, j, "composition with the top projection is not bijective"))
        elif phi.dim and not Subspace.span(f, composed.shape[1], composed).contains(phi.basis.reshape(phi.dim, -1)):
            law_bad.append((i, j, "hom does not factor through the top"))
    _claim(res, "hom_dimension_law", not law_bad, str(law_bad))

    _claim(res, "projective_top_nonzero", all(t.dim > 0 for t in tops), "zero top")

    proj_bad = [i for i, p in enumerate(P) if not (p.certificates["projective"].holds and verify_projective_section(p.module, p.certificates["projective"]))]
    _claim(res, "pims_projective", not proj_bad, f"projectivity fails for {proj_bad}")

    ind_bad = [i for i, p in enumerate(P) if not p.certificates["indecomposable"].holds]
    _claim(res, "pims_indecomposable", not ind_bad, f"indecomposability fails for {ind_bad}")

    iff_bad = []
    for i, p in enumerate(P):
        if not is_simple(tops[i], rng.getrandbits(32)).holds:
            iff_bad.append((i, "top not simple"))
    # negatives: sums of two PIMs are projective, decomposable, and have non-simple tops
    for i in range(min(len(P), 3)):
        k = (i + 1) % len(P)
        s_mod = direct_sum(P[i].module, P[k].module)
        t = top((s_mod, table.radical))
        if t.dim and is_simple(t, rng.getrandbits(32)).holds:
            iff_bad.append((i, k, "top of a direct sum is simple"))
        if is_indecomposable(s_mod, rng.getrandbits(32)).holds:
            iff_bad.append((i, k, "direct sum certified indecomposable"))
    _claim(res, "indecomposable_iff_simple_top", not iff_bad, str(iff_bad))

    ann_bad = [s.class_id for s in S if any(not f.is_zero(s.module.act(x)) for x in table.radical.space.basis)]
    _claim(res, "radical_annihilates_simples", not ann_bad, f"radical acts nontrivially on {ann_bad}")

    end_bad = []
    for s in S:
        try:
            deg = end_simple_structure(s).degree
        except StructureViolation as exc:
            end_bad.append((s.class_id, str(exc)))
            continue
        if deg != s.end_field_degree:
            end_bad.append((s.class_id, deg, s.end_field_degree))
    _claim(res, "end_simple_is_field", not end_bad, str(end_bad))

    table.verification = res
    return res


def verify_theorems(a: AlgebraData, seed: int = 0) -> dict:
    """Compute the bijection table and run the full claim battery."""
    return verify_table(bijection(a, seed), seed)
