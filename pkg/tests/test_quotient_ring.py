from __future__ import annotations

import pytest

from hitkit.errors import DomainError, UsageError
from hitkit.field import get_field
from hitkit.invariants import dickson_L
from hitkit.poly import Polynomial, monomial_basis
from hitkit.quotient_ring import (
    GradedIdeal,
    affine_ring,
    complement_of,
    cuspidal_dim,
    cuspidal_target,
    embedding_kernel_check,
    frames,
    gamma,
    gamma_fixed_check,
    hilbert_series,
    ideal_I,
    ideal_rel_check,
    mechanism_check,
    orbit_generators_match,
    p_stable,
    quot_agreement,
    ring_R,
    spike_check,
    top_degree,
    top_indecomposable_check,
    top_spanning_check,
    vanishes_above_top,
)

from oracles import monomials, poly_to_dict, quot_dim as quot_oracle, rank_mod_p

# rings small enough for every structural check
SMALL = [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (2, 3, 2)]


def _ideal_dim_oracle(gens, n: int, m: int, p: int) -> int:
    """dim I^m from all products monomial * generator, ranked by sympy."""
    basis = monomials(n, m)
    idx = {b: j for j, b in enumerate(basis)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > m:
            continue
        gd = poly_to_dict(g)
        for mono in monomials(n, m - dg):
            row = [0] * len(basis)
            for e, c in gd.items():
                row[idx[tuple(a + b for a, b in zip(e, mono))]] = c
            rows.append(row)
    return rank_mod_p(rows, p) if rows else 0


@pytest.mark.parametrize("n, q, k, d", [(1, 2, 1, 0), (2, 2, 1, 1), (2, 2, 2, 4), (3, 2, 1, 4), (2, 3, 1, 2), (2, 3, 2, 6), (3, 3, 1, 10)])
def test_top_degree(n, q, k, d):
    assert top_degree(n, q, k) == d


@pytest.mark.parametrize(
    "n, q, k, series",
    [
        ((1, 2, 1, [1, 0])),
        ((2, 2, 1, [1, 2, 0])),
        ((2, 2, 2, [1, 2, 3, 4, 2, 0])),
        ((2, 3, 1, [1, 2, 3, 0])),
        ((3, 2, 1, [1, 3, 6, 10, 8, 0])),
        ((2, 3, 2, [1, 2, 3, 4, 5, 6, 3, 0])),
    ],
)
def test_hilbert_series(n, q, k, series):
    r = ring_R(n, q, k)
    assert hilbert_series(r) == series
    assert vanishes_above_top(r)
    for m, h in enumerate(series):
        assert h == len(monomials(n, m)) - _ideal_dim_oracle(r.ideal.generators, n, m, q)


@pytest.mark.parametrize("n, q, k", SMALL)
def test_top_dim_is_steinberg_dim(n, q, k):
    r = ring_R(n, q, k)
    assert r.dim(r.top_degree) == q ** (n * (n - 1) // 2)


def test_generator_count():
    # one generator per hyperplane
    assert len(ideal_I(2, 2, 1).generators) == 3
    assert len(ideal_I(3, 2, 1).generators) == 7
    assert len(ideal_I(2, 3, 1).generators) == 4
    assert len(ideal_I(2, 4, 1).generators) == 5


@pytest.mark.parametrize("n, q, k", [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 3, 2), (2, 4, 1)])
def test_orbit_generators(n, q, k):
    assert orbit_generators_match(n, q, k)


@pytest.mark.parametrize("n, q, k", SMALL)
def test_quot_agreement(n, q, k):
    r = ring_R(n, q, k)
    rows = quot_agreement(r)
    for m, a, b in rows:
        assert a == b == quot_oracle(n, m, q)


@pytest.mark.parametrize("n, q, k", SMALL)
def test_structure(n, q, k):
    r = ring_R(n, q, k)
    assert p_stable(r.ideal, r.top_degree + 1)
    assert top_indecomposable_check(r) == (True, True)
    assert top_spanning_check(r, k)
    assert gamma_fixed_check(n, q, k, r)
    assert mechanism_check(n, q, k)


def test_frames_count():
    F2, F3 = get_field(2), get_field(3)
    assert len(frames(2, F2)) == 3
    assert len(frames(2, F3)) == 6
    assert len(frames(3, F2)) == 28


def test_gamma_is_dickson_over_monomial():
    F = get_field(3)
    g = gamma(2, F, 1)
    x = Polynomial.gens(F, 2)
    assert g * x[0] * x[1] == dickson_L(2, F)
    assert g.degree() == top_degree(2, 3, 1)


def test_ideal_contains():
    I = ideal_I(2, 2, 1)
    x1, x2 = Polynomial.gens(get_field(2), 2)
    assert I.contains(x1 * x1 + x1 * x2)
    assert I.contains(x1**3)
    assert not I.contains(x1)
    assert I.contains(x1 * x1)  # R^2 = 0 here
    assert not I.contains(x1 + x2)
    with pytest.raises(UsageError):
        GradedIdeal(get_field(2), 2, [x1 + x1 * x2])


@pytest.mark.parametrize("n, q, k", [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (2, 3, 2), (2, 5, 1)])
def test_ideal_rel_all_lines(n, q, k):
    from hitkit.invariants import projective_points

    for y in projective_points(n, get_field(q)):
        assert ideal_rel_check(n, q, k, y)


def test_ideal_rel_errors():
    with pytest.raises(DomainError):
        ideal_rel_check(2, 2, 1, (0, 0))
    with pytest.raises(UsageError):
        ideal_rel_check(2, 2, 1, (1, 0, 0))


def test_complement():
    F = get_field(3)
    W = complement_of((0, 1, 2), F)
    assert W.dim == 2 and W.contains([1, 0, 0]) and W.contains([0, 0, 1])


@pytest.mark.parametrize("n, q, k", [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)])
def test_embedding_kernels(n, q, k):
    assert embedding_kernel_check(n, q, k) == (True, True)


@pytest.mark.parametrize("q, m, r", [(2, 1, 1), (2, 3, 1), (3, 2, 2), (3, 1, 1), (5, 1, 3), (4, 2, 1)])
def test_spike(q, m, r):
    assert spike_check(q, m, r) == (True, True)


def test_spike_range():
    with pytest.raises(UsageError):
        spike_check(2, 1, 2)


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 5), (3, 3)])
def test_cuspidal(n, q):
    rep = cuspidal_dim(n, q)
    assert rep.ok
    assert rep.dim_top == cuspidal_target(n, q)


def test_cuspidal_targets():
    assert cuspidal_target(2, 3) == 2
    assert cuspidal_target(3, 2) == 3
    assert cuspidal_target(4, 2) == 21
    assert cuspidal_target(3, 3) == 16


def test_affine_ring_series():
    r = affine_ring(3, 2)
    assert hilbert_series(r) == [1, 3, 0]
    for m in range(3):
        assert hilbert_series(r)[m] == len(monomials(3, m)) - _ideal_dim_oracle(r.ideal.generators, 3, m, 2)
    with pytest.raises(UsageError):
        affine_ring(1, 2)


def test_rep_monomials_span_quotient():
    r = ring_R(2, 3, 1)
    for m in range(r.top_degree + 1):
        reps = r.rep_monomials(m)
        assert len(reps) == r.dim(m)
        assert set(reps) <= set(monomial_basis(2, m))
