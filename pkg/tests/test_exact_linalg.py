"""Row reduction, kernels, subspaces and characteristic/minimal polynomials."""

from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import F2, F3, F5, F7, Q
from pimsim.errors import DimensionMismatch, NoSolution
from pimsim.linalg import (
    Subspace,
    char_poly,
    inverse,
    kernel_basis,
    min_poly,
    rank,
    rref,
    solve,
    subspace_meet_join,
)
from pimsim.poly import Poly


def test_rref_examples():
    r, piv = rref(F5, F5.eye(3))
    assert (r == F5.eye(3)).all() and piv == [0, 1, 2]
    r, piv = rref(F5, F5.zeros((2, 4)))
    assert not r.any() and piv == []
    r, piv = rref(F5, F5.array([[2, 4], [1, 2]]))
    assert r.tolist() == [[1, 2], [0, 0]] and piv == [0]


def test_rref_over_q():
    r, piv = rref(Q, Q.array([[2, 1], [4, 3]]))
    assert piv == [0, 1]
    assert r.tolist() == [[1, 0], [0, 1]]
    r, _ = rref(Q, Q.array([[3, 1]]))
    assert r[0, 1] == Fraction(1, 3)


def test_kernel_examples():
    assert kernel_basis(F5, F5.eye(4)).dim == 0
    assert kernel_basis(F5, F5.zeros((2, 3))).is_full()
    k = kernel_basis(F3, F3.array([[1, 1, 1]]))
    assert k.dim == 2
    assert not F3.matmul(F3.array([[1, 1, 1]]), k.basis.T).any()


def test_solve_examples():
    rhs = F5.array([[1, 2], [3, 4]])
    assert (solve(F5, F5.eye(2), rhs) == rhs).all()
    with pytest.raises(NoSolution):
        solve(F5, F5.zeros((2, 2)), F5.array([[1], [0]]))
    assert solve(F5, F5.array([[2]]), F5.array([[1]])).tolist() == [[3]]
    with pytest.raises(DimensionMismatch):
        solve(F5, F5.eye(2), F5.array([[1], [2], [3]]))


def test_meet_join_examples():
    u = Subspace.span(F7, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    v = Subspace.span(F7, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    meet, join = subspace_meet_join(u, v)
    assert meet.dim == 0 and join.is_full()
    assert subspace_meet_join(u, u) == (u, u)
    a = Subspace.span(F7, 2, [[1, 2]])
    b = Subspace.span(F7, 2, [[1, 3]])
    meet, join = subspace_meet_join(a, b)
    assert meet.dim == 0 and join.is_full()


def _brute_span(field, rows, n):
    out = set()
    for coeffs in itertools.product(range(field.p), repeat=len(rows)):
        v = tuple(sum(c * r[k] for c, r in zip(coeffs, rows)) % field.p for k in range(n))
        out.add(v)
    return out


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_meet_join_match_brute_force(data):
    field, n = F3, 3
    vec = st.lists(st.integers(0, 2), min_size=n, max_size=n)
    u_rows = data.draw(st.lists(vec, min_size=0, max_size=3))
    v_rows = data.draw(st.lists(vec, min_size=0, max_size=3))
    u, v = Subspace.span(field, n, u_rows), Subspace.span(field, n, v_rows)
    meet, join = subspace_meet_join(u, v)
    su, sv = _brute_span(field, u_rows, n), _brute_span(field, v_rows, n)
    assert len(su & sv) == field.p**meet.dim
    assert len(_brute_span(field, u_rows + v_rows, n)) == field.p**join.dim


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rref_idempotent_and_rank_nullity(rows):
    m = F7.array(rows)
    r, piv = rref(F7, m)
    r2, piv2 = rref(F7, r)
    assert (r == r2).all() and piv == piv2
    assert kernel_basis(F7, m).dim + rank(F7, m) == m.shape[1]


@given(matrices, st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_subspace_canonical(rows, seed):
    m = F7.array(rows)
    rng = np.random.default_rng(seed)
    mix = rng.integers(0, 7, size=(m.shape[0] + 2, m.shape[0]))
    other = F7.matmul(F7.array(mix), m)
    a = Subspace.span(F7, m.shape[1], m)
    b = Subspace.span(F7, m.shape[1], np.vstack([other, m]))
    assert a == b and (a.basis == b.basis).all()


def test_char_poly_examples():
    t = Poly.x(F5)
    one = Poly.const(F5, 1)
    assert char_poly(F5, F5.eye(2)) == (t - one) ** 2
    assert char_poly(F5, F5.zeros((3, 3))) == t**3
    companion = F2.array([[0, 1], [1, 1]])
    assert char_poly(F2, companion) == Poly(F2, [1, 1, 1])


def test_min_poly_examples():
    t = Poly.x(F5)
    one = Poly.const(F5, 1)
    assert min_poly(F5, F5.eye(4)) == t - one
    jordan = F5.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert min_poly(F5, jordan) == t**3
    diag = F5.array([[1, 0], [0, 2]])
    assert min_poly(F5, diag) == (t - one) * (t - Poly.const(F5, 2))


def _det_brute(field, m):
    n = m.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i in range(n) for j in range(i) if perm[j] > perm[i])
        prod = 1
        for i in range(n):
            prod = prod * int(m[i, perm[i]]) % field.p
        total += sign * prod
    return total % field.p


@pytest.mark.parametrize("field", [F2, F3, F7])
@given(seed=st.integers(0, 100_000), n=st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_char_min_poly_laws(field, seed, n):
    rng = np.random.default_rng(seed)
    m = F7.reduce(rng.integers(0, field.p, size=(n, n))) % field.p
    m = field.array(m)
    chi = char_poly(field, m)
    mu = min_poly(field, m)
    assert chi.degree == n and chi.lead == 1
    assert (chi % mu).is_zero()
    assert not chi.eval_matrix(m).any()
    assert not mu.eval_matrix(m).any()
    # chi(c) = det(cI - m) for every scalar c
    for c in range(field.p):
        assert chi(c) == _det_brute(field, field.reduce(c * field.eye(n) - m))


def test_char_poly_over_q():
    m = Q.array([[Fraction(1, 2), 1], [0, 3]])
    chi = char_poly(Q, m)
    assert chi(Fraction(1, 2)) == 0 and chi(3) == 0


@given(seed=st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_inverse_roundtrip(seed):
    rng = np.random.default_rng(seed)
    m = F5.array(rng.integers(0, 5, size=(4, 4)))
    if rank(F5, m) < 4:
        return
    assert (F5.matmul(m, inverse(F5, m)) == F5.eye(4)).all()
