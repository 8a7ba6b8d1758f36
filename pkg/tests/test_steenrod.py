from __future__ import annotations

import math

import numpy as np
import pytest

from hitkit.errors import UsageError
from hitkit.field import get_field
from hitkit.poly import Polynomial, monomial_basis
from hitkit.properties import random_homogeneous
from hitkit.steenrod import (
    alpha,
    binom_mod_p,
    chi_linear_form,
    chi_p,
    chi_trick_check,
    hit_space,
    is_hit,
    ph_closed_form,
    quot_dim,
    steenrod_p,
    total_p,
    total_ph,
)

import oracles

F2, F3 = get_field(2), get_field(3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas(p):
    for m in range(40):
        for k in range(m + 2):
            assert binom_mod_p(m, k, p) == math.comb(m, k) % p


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_unstable_and_linear_action(q):
    F = get_field(q)
    x = Polynomial.var(F, 1, 0)
    assert steenrod_p(1, x) == x**q
    f = x**2 + x**3
    for k in (4, 5, 9):
        assert steenrod_p(k, x**3).is_zero()
    assert steenrod_p(0, f) == f


def test_sq1_of_square_vanishes():
    x = Polynomial.var(F2, 1, 0)
    assert steenrod_p(1, x**2).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_against_cartan_oracle(p, rng):
    F = get_field(p)
    for _ in range(40):
        n = int(rng.integers(1, 4))
        m = tuple(int(a) for a in rng.integers(0, 6, size=n))
        k = int(rng.integers(0, 5))
        got = {e: int(c) for e, c in steenrod_p(k, Polynomial.monomial(F, m)).terms.items()}
        assert got == oracles.reduced_power_monomial(k, m, p)


def test_chi_examples():
    for q in (2, 3, 5):
        F = get_field(q)
        x = Polynomial.var(F, 1, 0)
        assert chi_p(1, x) == -(x**q)
        assert chi_p(0, x**2 + x) == x**2 + x
    x = Polynomial.var(F2, 1, 0)
    assert chi_p(2, x).is_zero()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_chi_on_linear_forms(q):
    F = get_field(q)
    ell = Polynomial.linear_form(F, [1, 1, 0])
    for k in range(0, 14):
        assert chi_p(k, ell) == chi_linear_form(k, ell)


@pytest.mark.parametrize("q", [2, 3])
def test_chi_recursion_equals_closed_form(q, rng):
    F = get_field(q)
    for _ in range(25):
        f = random_homogeneous(rng, F, 2, int(rng.integers(1, 5)))
        r = int(rng.integers(0, 6))
        sign = -1 if r % 2 else 1
        assert ph_closed_form(r, f) == chi_p(r, f).scale(F.from_int(sign))


def test_total_ph_examples():
    for q in (2, 3):
        F = get_field(q)
        x = Polynomial.var(F, 1, 0)
        assert total_ph(x, q**2) == x + x**q + x ** (q * q)
        one = Polynomial.one(F, 1)
        assert total_ph(one, 7) == one
    x = Polynomial.var(F2, 1, 0)
    for cap in (2, 5, 11):
        assert total_ph(x - x**2, cap) == x


def test_total_p_is_sum_of_operations():
    F = F3
    x, y = Polynomial.gens(F, 2)
    f = x**2 * y + y**3
    cap = 11
    want = Polynomial.zero(F, 2)
    for k in range(cap):
        want = want + steenrod_p(k, f)
    assert total_p(f, cap) == want.truncate(cap)


@pytest.mark.parametrize(
    "n, q, d, dim",
    [
        (1, 2, 2, 1),
        (2, 2, 2, 2),
        (1, 3, 1, 0),
    ],
)
def test_hit_space_examples(n, q, d, dim):
    assert hit_space(n, d, q).dim == dim


@pytest.mark.parametrize("n, q, d, want", [(3, 2, 4, 8), (4, 2, 4, 21), (2, 2, 1, 2), (2, 3, 2, 3)])
def test_quot_dim_examples(n, q, d, want):
    assert quot_dim(n, d, q) == want


@pytest.mark.parametrize("n, p, dmax", [(2, 2, 12), (3, 2, 9), (2, 3, 12), (3, 3, 8), (2, 5, 14)])
def test_quot_dim_matches_oracle(n, p, dmax):
    for d in range(dmax + 1):
        assert quot_dim(n, d, p) == oracles.quot_dim(n, d, p), d


def test_quot_dim_f4_generated_by_p_powers():
    # over F_4 the reduced powers are generated by P^(2^a); both spans agree
    F = get_field(4)
    for d in range(0, 10):
        h = hit_space(2, d, F)
        rows = []
        a = 1
        while a * 3 <= d:
            for m in monomial_basis(2, d - 3 * a):
                rows.append(steenrod_p(a, Polynomial.monomial(F, m)).to_vector(d))
            a *= 2
        from hitkit.linalg import span

        gen = span(F, np.array(rows) if rows else np.zeros((0, h.subspace.ambient_dim)), h.subspace.ambient_dim)
        assert gen == h.subspace


@pytest.mark.parametrize("a, q, want", [(7, 2, 3), (17, 3, 5), (0, 5, 0)])
def test_alpha(a, q, want):
    assert alpha(a, q) == want


def test_chi_trick_k0_and_examples(rng):
    for q in (2, 3):
        F = get_field(q)
        for _ in range(10):
            f = random_homogeneous(rng, F, 2, int(rng.integers(0, 3)))
            g = random_homogeneous(rng, F, 2, int(rng.integers(0, 3)))
            assert chi_trick_check(f, g, 0)
            assert chi_trick_check(f, g, 1)


def test_is_hit_mixed_degrees():
    x, y = Polynomial.gens(F2, 2)
    # Sq^1(x) = x^2, Sq^1(x^3) = x^4, Sq^2(xy) = x^2 y^2
    assert is_hit(x**2 + y**2 + x**4 + x**2 * y**2)
    assert not is_hit(x * y)
    assert not is_hit(x**2 + x * y**3)


def test_negative_index_rejected():
    with pytest.raises(UsageError):
        chi_p(-1, Polynomial.var(F2, 1, 0))
