"""Simplicity, composition series, radicals, decompositions and isomorphism."""

import random

import numpy as np
import pytest

from conftest import F2, F3, F5, F7, Q
from pimsim.algebra import build_example, dickson_radical
from pimsim.certificates import (
    DECOMPOSABLE_WITNESS,
    INDECOMPOSABLE_BY_LOCAL_END,
    NOT_SIMPLE_WITNESS,
    SIMPLE_BY_EXHAUSTIVE_SPIN,
    SIMPLE_BY_NORTON,
    Certificate,
)
from pimsim.corpus import corpus
from pimsim.decomp import (
    algebra_radical,
    composition_series,
    find_proper_submodule,
    indecomposable_decomposition,
    is_indecomposable,
    is_simple,
    iso_modules,
    iso_simple,
    lift_idempotent,
    radical_nilpotency_index,
    simple_modules,
)
from pimsim.errors import NotApproxIdempotent, UnsupportedField
from pimsim.linalg import Subspace, rank
from pimsim.module import (
    classify_endo,
    direct_sum,
    hom_basis,
    is_invariant,
    regular_module,
    submodule_restrict,
)
from pimsim.replay import replay


def column_module(n, field):
    """The natural n-dimensional module of the full matrix algebra (a simple module)."""
    alg = build_example("full-matrix", field, n)
    reg = regular_module(alg)
    # the first column {e_i1} is a left ideal
    col = Subspace.span(field, n * n, [field.eye(n * n)[i * n] for i in range(n)])
    return submodule_restrict(reg, col)[0]


def test_find_proper_submodule_examples(ut2, ut2_parts):
    reg, p1, _, _, _ = ut2_parts
    found = find_proper_submodule(regular_module(ut2))
    assert found in (Subspace.span(F5, 3, [[0, 1, 0]]), Subspace.span(F5, 3, [[1, 0, 0]]))
    assert is_invariant(reg, found)
    assert find_proper_submodule(p1) is None
    col = column_module(2, F3)
    ss = direct_sum(col, col)
    sub = find_proper_submodule(ss)
    assert sub is not None and sub.dim == 2 and is_invariant(ss, sub)


def test_is_simple_examples(ut2_parts):
    _, p1, p2, _, top2 = ut2_parts
    assert is_simple(p1).holds
    cert = is_simple(p2)
    assert cert.kind == NOT_SIMPLE_WITNESS
    # P2 has basis (e12, e22); its only proper submodule is span{e12}
    assert Subspace.span(F5, 2, cert.payload["subspace"]) == Subspace.span(F5, 2, [[1, 0]])
    col = column_module(2, F3)
    assert is_simple(col).kind == SIMPLE_BY_EXHAUSTIVE_SPIN
    assert is_simple(col, method="norton").kind == SIMPLE_BY_NORTON


def test_norton_beyond_exhaustive_limit():
    col = column_module(5, F7)  # 7^5 > 4096
    cert = is_simple(col)
    assert cert.kind == SIMPLE_BY_NORTON and replay(col, cert)
    c5 = build_example("cyclic-group", F2, 5)
    _, simples = simple_modules(c5)
    assert sorted(s.dim for s in simples) == [1, 4]
    big = max(simples, key=lambda s: s.dim)
    assert is_simple(big, method="norton").kind == SIMPLE_BY_NORTON


def test_over_q_rejected():
    with pytest.raises(UnsupportedField):
        is_simple(regular_module(build_example("upper-triangular", Q, 2)))


def test_composition_series_examples(ut2, ut2_parts):
    _, p1, _, _, top2 = ut2_parts
    single = composition_series(p1)
    assert single.length == 1 and [s.dim for s in single.chain] == [0, 1]
    cs = composition_series(regular_module(ut2))
    assert cs.length == 3
    # e11 acts as 1 on both P1 and M = span{e12}; e22 acts as 1 only on P2/M
    reps = cs.class_representatives()
    counts = cs.class_multiset()
    p1_class = [c for c, r in enumerate(reps) if iso_simple(r, p1)][0]
    top_class = [c for c, r in enumerate(reps) if iso_simple(r, top2)][0]
    assert counts == {p1_class: 2, top_class: 1}
    for lo, hi in zip(cs.chain, cs.chain[1:]):
        assert hi.contains_space(lo) and hi.dim == lo.dim + 1
    m2 = build_example("full-matrix", F3, 2)
    cs2 = composition_series(regular_module(m2))
    assert cs2.length == 2 and set(cs2.factor_class_ids) == {0}
    assert iso_simple(cs2.factors[0], column_module(2, F3))


def test_radical_examples(ut2):
    rad, simples = algebra_radical(ut2)
    assert rad.dim == 1 and sorted(s.dim for s in simples) == [1, 1]
    assert radical_nilpotency_index(ut2, rad) == 2
    c3 = build_example("cyclic-group", F3, 3)
    rad, simples = algebra_radical(c3)
    assert rad.dim == 2 and [s.dim for s in simples] == [1]
    m2 = build_example("full-matrix", F3, 2)
    rad, simples = algebra_radical(m2)
    assert rad.dim == 0 and [s.dim for s in simples] == [2]
    assert radical_nilpotency_index(m2, rad) == 1
    t3 = build_example("truncated-poly", F5, 3)
    assert radical_nilpotency_index(t3, algebra_radical(t3)[0]) == 3


def test_is_indecomposable_examples(ut2_parts):
    _, p1, p2, _, top2 = ut2_parts
    assert is_indecomposable(p1).kind == INDECOMPOSABLE_BY_LOCAL_END
    assert is_indecomposable(top2).holds
    assert is_indecomposable(p2).kind == INDECOMPOSABLE_BY_LOCAL_END
    s = direct_sum(p1, p2)
    cert = is_indecomposable(s)
    assert cert.kind == DECOMPOSABLE_WITNESS and replay(s, cert)
    e = cert.payload["idempotent"]
    assert (F5.matmul(e, e) == e).all() and 0 < rank(F5, e) < 3


def test_lift_idempotent_examples(ut2_parts):
    _, p1, _, _, _ = ut2_parts
    s = direct_sum(p1, p1)
    e = F5.array([[1, 0], [0, 0]])
    assert (lift_idempotent(s, e, 1).matrix == e).all()
    assert not lift_idempotent(s, F5.zeros((2, 2)), 1).matrix.any()
    # e + eps with eps nilpotent and commuting: (e + eps)^2 - (e + eps) lies in (eps)
    t2 = build_example("truncated-poly", F5, 2)
    reg = regular_module(t2)
    ss = direct_sum(reg, reg)
    eps = ss.act([0, 1])
    e = F5.zeros((4, 4))
    e[:2, :2] = F5.eye(2)
    approx = F5.reduce(e + F5.matmul(e, eps))
    lifted = lift_idempotent(ss, approx, 2).matrix
    assert (F5.matmul(lifted, lifted) == lifted).all()
    with pytest.raises(NotApproxIdempotent):
        lift_idempotent(ss, F5.reduce(3 * F5.eye(4)), 2)


def test_decomposition_examples(ut2, ut2_parts):
    dec = indecomposable_decomposition(regular_module(ut2))
    assert sorted(m.dim for m, _ in dec.summands) == [1, 2]
    assert all(c.holds for c in dec.certificates)
    m2 = build_example("full-matrix", F3, 2)
    dec2 = indecomposable_decomposition(regular_module(m2))
    assert [m.dim for m, _ in dec2.summands] == [2, 2] and dec2.class_ids == [0, 0]
    _, _, p2, _, _ = ut2_parts
    single = indecomposable_decomposition(p2)
    assert len(single.summands) == 1 and single.summands[0][0] == p2


def test_decomposition_is_direct(ut2):
    for name, alg in corpus((3,))[:40]:
        reg = regular_module(alg)
        dec = indecomposable_decomposition(reg)
        total = Subspace.zero(alg.field, alg.dim)
        for (mod, space), inc in zip(dec.summands, dec.embeddings):
            assert is_invariant(reg, space)
            total = total + space
        assert total.is_full() and sum(s.dim for _, s in dec.summands) == alg.dim, name


def test_iso_examples(ut2_parts):
    _, p1, p2, _, top2 = ut2_parts
    assert iso_simple(p1, p1)
    assert not iso_simple(p1, top2)
    col = column_module(2, F3)
    g = F3.array([[1, 1], [0, 1]])
    ginv = F3.array([[1, 2], [0, 1]])
    rebased = type(col)(col.algebra, np.stack([F3.matmul(F3.matmul(g, a), ginv) for a in col.actions]))
    assert iso_simple(col, rebased)
    assert iso_modules(p2, p2).kind == "isomorphic"
    res = iso_modules(p1, p2)
    assert res.kind == "not_isomorphic" and res.reason == "dimension"
    m2 = build_example("full-matrix", F3, 2)
    dec = indecomposable_decomposition(regular_module(m2))
    (a, _), (b, _) = dec.summands
    assert iso_modules(a, b).kind == "isomorphic"
    rad, _ = algebra_radical(m2)
    assert iso_modules(a, b, hint="pim", radical=rad).kind == "isomorphic"


def _small_corpus():
    return [(n, a) for n, a in corpus((2, 3)) if a.dim <= 8]


@pytest.mark.parametrize("name,alg", _small_corpus(), ids=[n for n, _ in _small_corpus()])
def test_certificates_replay_and_double_check(name, alg):
    reg = regular_module(alg)
    cs = composition_series(reg, seed=3)
    for fac, cert in zip(cs.factors, cs.certificates):
        assert replay(fac, cert)
        norton = is_simple(fac, seed=5, method="norton")
        assert norton.kind == SIMPLE_BY_NORTON and replay(fac, norton)
        assert is_simple(fac, method="exhaustive").kind == SIMPLE_BY_EXHAUSTIVE_SPIN
    dec = indecomposable_decomposition(reg, seed=3)
    rng = random.Random(7)
    for (mod, _), cert in zip(dec.summands, dec.certificates):
        assert replay(mod, cert)
        hb = hom_basis(mod, mod)
        for _ in range(25):
            assert classify_endo(mod, hb.random_element(rng)).kind != "neither"
    # semisimple iff each summand is simple iff factor and summand multisets agree
    rad, _ = algebra_radical(alg)
    all_simple = all(is_simple(mod).holds for mod, _ in dec.summands)
    assert (rad.dim == 0) == all_simple
    if alg.field.p > alg.dim:
        assert dickson_radical(alg).space == rad.space


def test_tampered_certificates_fail(ut2_parts):
    _, p1, p2, _, _ = ut2_parts
    good = is_simple(p1)
    assert replay(p1, good)
    assert not replay(p2, Certificate(SIMPLE_BY_EXHAUSTIVE_SPIN, {"points": 6}))
    assert not replay(p2, Certificate(NOT_SIMPLE_WITNESS, {"subspace": F5.array([[0, 1]])}))
    cert = is_indecomposable(p2)
    assert not replay(direct_sum(p1, p1), Certificate(cert.kind, {"end_basis": cert.payload["end_basis"], "radical": cert.payload["radical"]}))
