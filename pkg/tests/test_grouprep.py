from __future__ import annotations

import itertools

import numpy as np
import pytest

from hitkit.config import LIMITS
from hitkit.errors import DomainError, ResourceError, UsageError
from hitkit.field import get_field
from hitkit.grouprep import (
    DegreeCarrier,
    GroupAlgElem,
    action_matrix,
    enumerate_gl,
    gl_order,
    steinberg_apply,
    steinberg_idempotent,
    sym_power_matrix,
    summand_dims,
    twisted_idempotent,
    upper_triangular,
)
from hitkit.linalg import span
from hitkit.poly import GLElement, Polynomial, from_vector, monomial_basis, sym_dim
from hitkit.quotient_ring import ring_R

from oracles import brute_gl, gl_order as gl_order_oracle, rank_mod_p

F2, F3 = get_field(2), get_field(3)


@pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (3, 2), (2, 3), (1, 5), (2, 4)])
def test_enumeration(n, q):
    G = enumerate_gl(n, q)
    assert len(G) == len(set(G)) == gl_order(n, q) == gl_order_oracle(n, q)


@pytest.mark.parametrize("n, p", [(2, 2), (2, 3), (3, 2)])
def test_enumeration_matches_brute(n, p):
    want = {tuple(v for r in g for v in r) for g in brute_gl(n, p)}
    assert {g.entries for g in enumerate_gl(n, p)} == want


def test_gl4_order_and_cap():
    assert gl_order(4, 2) == 20160
    old = LIMITS.max_group_order
    LIMITS.max_group_order = 1000
    try:
        with pytest.raises(ResourceError):
            enumerate_gl(4, 2)
    finally:
        LIMITS.max_group_order = old


def test_convolution_associative(rng):
    G = enumerate_gl(2, F2)

    def rand_elem():
        return GroupAlgElem(F2, 2, {G[int(i)]: 1 for i in rng.integers(0, 6, 3)})

    for _ in range(20):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert (a * b) * c == a * (b * c)


def test_identity_and_st1():
    e = GroupAlgElem.identity(F2, 1)
    assert steinberg_idempotent(1, F2) == e
    for q in (3, 5):
        assert steinberg_idempotent(1, q).is_idempotent()


def test_st2_f2_terms():
    st = steinberg_idempotent(2, F2)
    assert len(st) == 4 and set(st.terms.values()) == {1}
    assert len(upper_triangular(2, F2)) == 2


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 5)])
def test_idempotent(n, q):
    assert steinberg_idempotent(n, q).is_idempotent()
    for i in range(q - 1):
        assert twisted_idempotent(n, q, i).is_idempotent()
    assert twisted_idempotent(n, q, 0) == steinberg_idempotent(n, q)


def test_twist_range():
    with pytest.raises(UsageError):
        twisted_idempotent(2, 2, 1)
    with pytest.raises(UsageError):
        twisted_idempotent(2, 3, 2)


def test_twists_are_orthogonal_in_degree_one():
    # St_2 (x) Det^i over F_3: distinct twists give distinct summands
    car = DegreeCarrier(F3, 2, 3)
    a, b = twisted_idempotent(2, 3, 0), twisted_idempotent(2, 3, 1)
    assert (action_matrix(a * b, car, "generic").entries == 0).all()


@pytest.mark.parametrize("q, n, d", [(2, 2, 3), (3, 2, 2), (2, 3, 2), (4, 2, 2)])
def test_sym_power_is_homomorphism(q, n, d, rng):
    F = get_field(q)
    G = enumerate_gl(n, F)
    for _ in range(10):
        g, h = G[int(rng.integers(len(G)))], G[int(rng.integers(len(G)))]
        assert np.array_equal(F.matmul(sym_power_matrix(g, d), sym_power_matrix(h, d)), sym_power_matrix(g @ h, d))
        M = sym_power_matrix(g, d)
        for j, m in enumerate(monomial_basis(n, d)):
            assert from_vector(F, M[j], n, d) == Polynomial.monomial(F, m).act(g)


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (2, 5)])
def test_factorized_equals_generic(n, q):
    F = get_field(q)
    for i in range(q - 1):
        st = twisted_idempotent(n, F, i)
        for d in range(0, 6 if n == 2 else 4):
            car = DegreeCarrier(F, n, d)
            assert action_matrix(st, car, "factorized") == action_matrix(st, car, "generic")


def test_factorized_on_quotient_carrier():
    r = ring_R(2, 3, 2)
    st = twisted_idempotent(2, 3, 1)
    for m in range(r.top_degree + 1):
        car = r.carrier(m)
        assert action_matrix(st, car, "factorized") == action_matrix(st, car, "generic")


def test_identity_acts_as_identity():
    car = DegreeCarrier(F3, 2, 3)
    M = action_matrix(GroupAlgElem.identity(F3, 2), car)
    assert np.array_equal(M.entries, np.eye(car.dim, dtype=np.uint8))


def test_st2_on_degree_one():
    car = DegreeCarrier(F2, 2, 1)
    M = action_matrix(steinberg_idempotent(2, F2), car)
    assert M @ M == M
    assert rank_mod_p(M.entries.tolist(), 2) == 1  # Sym^1 over F_2 is the Steinberg module itself
    car = DegreeCarrier(F2, 2, 0)
    assert summand_dims(steinberg_idempotent(2, F2), [car]) == [0]  # 4 terms act as 4 = 0


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (3, 2)])
def test_summand_dims_of_sym_match_generic_rank(n, q):
    F = get_field(q)
    st = steinberg_idempotent(n, F)
    cars = [DegreeCarrier(F, n, d) for d in range(5)]
    dims = summand_dims(st, cars)
    for d, car in enumerate(cars):
        assert dims[d] == rank_mod_p(action_matrix(st, car, "generic").entries.tolist(), F.p)


def test_summand_dims_on_R():
    r = ring_R(1, 2, 2)
    st = steinberg_idempotent(1, F2)
    assert summand_dims(st, [r.carrier(m) for m in range(2)]) == [1, 1]
    r = ring_R(2, 2, 2)
    st = steinberg_idempotent(2, F2)
    assert summand_dims(st, [r.carrier(m) for m in range(5)]) == [0, 1, 1, 1, 1]


def test_summand_dims_rejects_non_idempotent():
    G = enumerate_gl(2, F2)
    a = GroupAlgElem.of(G[1])
    if a.is_idempotent():
        a = GroupAlgElem.of(G[2])
    with pytest.raises(DomainError):
        summand_dims(a, [DegreeCarrier(F2, 2, 1)])


def test_steinberg_apply_rows():
    F = F3
    rows = np.eye(sym_dim(2, 4), dtype=np.uint8)
    out = steinberg_apply(rows, 2, 4, F, 0)
    assert np.array_equal(out, action_matrix(steinberg_idempotent(2, F), DegreeCarrier(F, 2, 4), "generic").entries)


def test_mismatched_carrier():
    with pytest.raises(UsageError):
        action_matrix(steinberg_idempotent(2, F2), DegreeCarrier(F3, 2, 1))
