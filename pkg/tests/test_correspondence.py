"""The PIM / simple correspondence and its verification battery."""

import copy

import pytest

from conftest import F2, F3, F5, Q
from oracle import brute_end_dim
from pimsim.algebra import build_example
from pimsim.correspondence import (
    bijection,
    end_simple_structure,
    hom_dim_matrix,
    pims,
    projective_cover,
    simples_of,
    top,
    verify_table,
    verify_theorems,
)
from pimsim.decomp import iso_simple
from pimsim.errors import UnsupportedField
from pimsim.module import spin


def test_pims_examples(ut2):
    recs = pims(ut2)
    assert sorted((p.dim, p.multiplicity_in_regular) for p in recs) == [(1, 1), (2, 1)]
    m2 = pims(build_example("full-matrix", F3, 2))
    assert [(p.dim, p.multiplicity_in_regular) for p in m2] == [(2, 2)]
    c3 = pims(build_example("cyclic-group", F3, 3))
    assert [(p.dim, p.multiplicity_in_regular) for p in c3] == [(3, 1)]
    for p in recs:
        assert spin(p.module, p.generator).is_full()


def test_tops_examples(ut2, ut2_parts):
    _, p1, _, _, top2 = ut2_parts
    recs = sorted(pims(ut2), key=lambda p: p.dim)
    t1, t2 = top(recs[0]), top(recs[1])
    assert t1 == recs[0].module and iso_simple(t1, p1)
    assert t2.dim == 1 and t2.actions.reshape(3).tolist() == [0, 0, 1]
    assert iso_simple(t2, top2)
    (c3pim,) = pims(build_example("cyclic-group", F3, 3))
    triv = top(c3pim)
    assert triv.dim == 1 and (triv.actions.reshape(3) == 1).all()


def test_projective_cover_examples(ut2, ut2_parts):
    _, p1, _, _, top2 = ut2_parts
    table = bijection(ut2)
    by_dim = {p.dim: p for p in table.pims}
    for s in table.simples:
        cover = projective_cover(s, table)
        if iso_simple(s.module, p1):
            assert cover is by_dim[1]
        else:
            assert iso_simple(s.module, top2) and cover is by_dim[2]
    m2 = bijection(build_example("full-matrix", F3, 2))
    (s,) = m2.simples
    assert projective_cover(s, m2).module.dim == 2


def test_bijection_examples(ut2):
    table = bijection(ut2)
    assert len(table.pairs) == 2
    assert hom_dim_matrix(table) == [[1, 0], [0, 1]]
    assert table.radical.dim == 1
    c3 = bijection(build_example("cyclic-group", F2, 3))
    assert sorted(s.dim for s in c3.simples) == [1, 2]
    assert c3.radical.dim == 0
    for p, s in c3.pairs:
        assert p.dim == s.dim and iso_simple(p.module, s.module)
    big = [s for s in c3.simples if s.dim == 2][0]
    assert big.end_field_degree == 2
    assert brute_end_dim(big.module.actions, 2) == 2
    i = c3.pims.index(next(p for p, s in c3.pairs if s is big))
    assert c3.hom_dims[i][big.class_id] == 2
    t4 = bijection(build_example("truncated-poly", F5, 4))
    assert [(p.dim, s.dim) for p, s in t4.pairs] == [(4, 1)]
    assert t4.radical.dim == 3


def test_end_simple_examples():
    m2 = simples_of(build_example("full-matrix", F3, 2))
    assert end_simple_structure(m2[0]).degree == 1
    c3 = simples_of(build_example("cyclic-group", F2, 3))
    assert [end_simple_structure(s).degree for s in c3] == [1, 2]


def test_over_q_rejected():
    with pytest.raises(UnsupportedField):
        bijection(build_example("upper-triangular", Q, 2))


def test_verify_theorems_example(ut2):
    res = verify_theorems(ut2)
    assert all(r.passed for r in res.values()), {k: r.witness for k, r in res.items() if not r.passed}
    assert len(res) == 13


def test_swapped_pairing_is_caught(ut2):
    table = bijection(ut2)
    bad = copy.copy(table)
    bad.matching = list(reversed(table.matching))
    res = verify_table(bad)
    assert not res["pairing_characterization"].passed
    assert "hom mismatches" in res["pairing_characterization"].witness
    assert res["count_equal"].passed


def test_wrong_end_degree_is_caught():
    table = bijection(build_example("cyclic-group", F2, 3))
    bad = copy.copy(table)
    bad.simples = [copy.copy(s) for s in table.simples]
    bad.simples[1].end_field_degree = 1
    res = verify_table(bad)
    assert not res["hom_dimension_law"].passed
    assert not res["end_simple_is_field"].passed
