from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hitkit import properties
from hitkit.field import get_field
from hitkit.steenrod import steenrod_p


@pytest.mark.parametrize(
    "battery",
    [properties.cartan_failures, properties.antipode_failures, properties.chi_trick_failures, properties.rank_failures],
)
@pytest.mark.parametrize("seed", [1, 2])
def test_random_batteries(battery, seed):
    assert battery(np.random.default_rng(seed), 200) == 0


def test_field_axioms():
    assert properties.field_axiom_failures() == 0


def test_idempotents():
    assert properties.idempotent_failures() == 0


def test_random_homogeneous(rng):
    F = get_field(5)
    for d in range(5):
        f = properties.random_homogeneous(rng, F, 3, d)
        assert f.is_homogeneous() and (f.is_zero() or f.degree() == d)
        assert all(0 < c < 5 for c in f.terms.values())


@settings(max_examples=200, deadline=None)
@given(
    q=st.sampled_from(properties.PROPERTY_FIELDS),
    n=st.integers(1, 3),
    d=st.integers(0, 4),
    seed=st.integers(0, 2**32 - 1),
)
def test_unstable_condition(q, n, d, seed):
    # P^d f = f^q in degree d, and P^k f = 0 for k > d
    F = get_field(q)
    f = properties.random_homogeneous(np.random.default_rng(seed), F, n, d)
    assert steenrod_p(d, f) == f**q
    assert steenrod_p(d + 1, f).is_zero()


@settings(max_examples=200, deadline=None)
@given(q=st.sampled_from(properties.PROPERTY_FIELDS), n=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
def test_p_is_additive(q, n, seed):
    rng = np.random.default_rng(seed)
    F = get_field(q)
    d = int(rng.integers(0, 4))
    f, g = (properties.random_homogeneous(rng, F, n, d) for _ in range(2))
    k = int(rng.integers(0, 4))
    assert steenrod_p(k, f + g) == steenrod_p(k, f) + steenrod_p(k, g)
