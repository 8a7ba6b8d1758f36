from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest

from hitkit.config import LIMITS
from hitkit.errors import ResourceError, UsageError
from hitkit.simplicial import (
    Complex,
    affine_hyperplane_functionals,
    affine_spanning_count,
    alexander_dual,
    build_affine_K,
    build_delta,
    check_matroid_exchange,
    check_matroid_exchange_pairwise,
    dual_euler_relation,
    f_vector,
    facet_count_formula,
    h_from_f,
    reduced_euler,
    spanning_subset_count,
    sr_generators,
)

from oracles import rank_mod_p

DELTA_TUPLES = [(2, 2, 1), (2, 2, 2), (3, 2, 1), (3, 2, 2), (2, 3, 1), (2, 3, 2)]
TRIANGLE = Complex.from_facets(3, [(0, 1), (1, 2), (0, 2)])
BAD = Complex.from_facets(3, [(0, 1), (2,)])  # {c} cannot grow inside {a, b}


def _vectors(c: Complex):
    return [l for l, _ in c.labels] if c.kind == "delta" else list(c.labels)


@pytest.mark.parametrize("n, q, k", [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (2, 3, 2), (2, 5, 1)])
def test_faces_are_complements_of_spanning_sets(n, q, k):
    c = build_delta(n, q, k)
    vecs = _vectors(c)
    N = c.vertex_count
    table = c.face_table()
    for mask in range(1 << N):
        comp = [vecs[v] for v in range(N) if not mask >> v & 1]
        spans = bool(comp) and rank_mod_p(comp, q) == n
        assert table[mask] == spans


@pytest.mark.parametrize("n, q", [(2, 2), (3, 2), (2, 3), (2, 5), (3, 3)])
def test_affine_faces_are_complements_of_affine_spanning_sets(n, q):
    c = build_affine_K(n, q)
    vecs = _vectors(c)
    N = c.vertex_count
    table = c.face_table()
    for mask in range(1 << N):
        comp = [vecs[v] for v in range(N) if not mask >> v & 1]
        assert table[mask] == (bool(comp) and rank_mod_p(comp, q) == n)


def test_delta_221():
    c = build_delta(2, 2, 1)
    fh = f_vector(c, "brute")
    assert fh.f == (3,) and fh.h == (1, 2)
    assert c.dim == 0 and c.facet_size() == 1
    assert sr_generators(c) == [frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})]


@pytest.mark.parametrize("n, q, k", DELTA_TUPLES)
def test_facets_have_size_d(n, q, k):
    c = build_delta(n, q, k)
    d = k * (q**n - 1) // (q - 1) - n
    assert c.facet_size() == d
    sizes = [bin(m).count("1") for m in c.faces()]
    assert max(sizes) == d
    # pure: every maximal face has size d
    faces = set(c.faces())
    for m in faces:
        if all((m | 1 << v) not in faces for v in range(c.vertex_count) if not m >> v & 1):
            assert bin(m).count("1") == d


def test_downward_closed(rng):
    c = build_delta(3, 2, 2)
    faces = c.faces()
    for m in rng.choice(faces, 200):
        m = int(m)
        for v in range(c.vertex_count):
            assert c.is_face(m & ~(1 << v))


@pytest.mark.parametrize("n, q, k", DELTA_TUPLES)
def test_mobius_equals_brute(n, q, k):
    c = build_delta(n, q, k)
    assert f_vector(c, "mobius") == f_vector(c, "brute")


@pytest.mark.parametrize("n, q, k", DELTA_TUPLES + [(3, 3, 1), (4, 2, 1), (2, 4, 1)])
def test_h_top_and_facets(n, q, k):
    fh = f_vector(build_delta(n, q, k), "mobius")
    assert fh.h[-1] == q ** (n * (n - 1) // 2)
    assert sum(fh.h) == fh.f[-1] == facet_count_formula(n, q, k)
    assert all(x >= 0 for x in fh.h)


def test_h_vector_values():
    assert f_vector(build_delta(2, 2, 2)).h == (1, 2, 3, 4, 2)
    assert f_vector(build_delta(3, 2, 2)).h == (1, 3, 6, 10, 15, 21, 28, 36, 38, 34, 24, 8)


def test_triangle_boundary():
    fh = f_vector(TRIANGLE)
    assert fh.f == (3, 3) and fh.h == (1, 1, 1)
    assert reduced_euler(TRIANGLE) == -1
    assert check_matroid_exchange(TRIANGLE)
    assert dual_euler_relation(TRIANGLE)[0]


def test_point_is_contractible():
    assert reduced_euler(Complex.from_facets(1, [(0,)])) == 0


@pytest.mark.parametrize("n, q, k", [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)])
def test_spanning_count_brute(n, q, k):
    c = build_delta(n, q, k)
    vecs = _vectors(c)
    N = c.vertex_count
    for size in range(N + 1):
        brute = sum(rank_mod_p([vecs[v] for v in S], q) == n for S in itertools.combinations(range(N), size)) if size else 0
        assert spanning_subset_count(n, q, k, size) == brute
    assert spanning_subset_count(2, 2, 1, 2) == 3
    assert spanning_subset_count(3, 2, 1, 2) == 0


@pytest.mark.parametrize("n, q", [(3, 2), (2, 3), (3, 3), (4, 2)])
def test_affine_count_brute(n, q):
    c = build_affine_K(n, q)
    vecs = _vectors(c)
    N = c.vertex_count
    for size in range(1, N + 1):
        combos = itertools.combinations(range(N), size)
        if comb(N, size) > 3000:
            continue
        brute = sum(rank_mod_p([vecs[v] for v in S], q) == n for S in combos)
        assert affine_spanning_count(n, q, size) == brute


@pytest.mark.parametrize(
    "n, q, f, h",
    [
        (2, 2, (), (1,)),
        (3, 2, (4,), (1, 3)),
        (2, 3, (3,), (1, 2)),
        (4, 2, (8, 28, 56, 56), (1, 4, 10, 20, 21)),
        (3, 3, (9, 36, 84, 126, 126, 72), (1, 3, 6, 10, 15, 21, 16)),
    ],
)
def test_affine_K_vectors(n, q, f, h):
    c = build_affine_K(n, q)
    assert c.facet_size() == q ** (n - 1) - n
    assert f_vector(c) == f_vector(c, "brute")
    fh = f_vector(c)
    assert fh.f == f and fh.h == h
    assert h[-1] == np.prod([q**i - 1 for i in range(1, n)])


@pytest.mark.parametrize("n, q, k", DELTA_TUPLES)
def test_delta_is_matroid(n, q, k):
    c = build_delta(n, q, k)
    assert check_matroid_exchange(c)
    if c.vertex_count <= 8:
        assert check_matroid_exchange_pairwise(c)


@pytest.mark.parametrize("n, q", [(3, 2), (2, 3)])
def test_K_is_matroid(n, q):
    c = build_affine_K(n, q)
    assert check_matroid_exchange(c) and check_matroid_exchange_pairwise(c)


def test_non_matroid_fixture():
    assert not check_matroid_exchange(BAD)
    assert not check_matroid_exchange_pairwise(BAD)


def test_exchange_dp_agrees_with_pairwise_on_random_complexes(rng):
    for _ in range(60):
        N = int(rng.integers(2, 7))
        facets = [tuple(np.flatnonzero(rng.random(N) < 0.5)) for _ in range(int(rng.integers(1, 4)))]
        c = Complex.from_facets(N, facets)
        assert check_matroid_exchange(c) == check_matroid_exchange_pairwise(c)


@pytest.mark.parametrize("n, q, k", DELTA_TUPLES)
def test_dual_euler(n, q, k):
    holds, hd, chi = dual_euler_relation(build_delta(n, q, k))
    assert holds and hd == q ** (n * (n - 1) // 2)


def test_dual_of_K32():
    holds, hd, chi = dual_euler_relation(build_affine_K(3, 2))
    assert holds and abs(chi) == 3


@pytest.mark.parametrize("n, q, k", DELTA_TUPLES)
def test_euler_h_relation(n, q, k):
    c = build_delta(n, q, k)
    fh = f_vector(c)
    d = c.facet_size()
    assert fh.h[-1] == (-1) ** (d - 1) * reduced_euler(c, fh)


def test_double_dual():
    c = build_delta(2, 3, 1)
    assert set(alexander_dual(alexander_dual(c)).faces()) == set(c.faces())


@pytest.mark.parametrize("n, q, k", [(2, 2, 1), (3, 2, 1), (2, 3, 2), (3, 2, 2)])
def test_sr_generators(n, q, k):
    c = build_delta(n, q, k)
    gens = sr_generators(c)
    assert gens == sr_generators(c, "brute")
    assert len(gens) == (q**n - 1) // (q - 1)


@pytest.mark.parametrize("n, q", [(3, 2), (2, 3), (3, 3)])
def test_K_generator_count(n, q):
    c = build_affine_K(n, q)
    assert len(sr_generators(c)) == len(affine_hyperplane_functionals(n, q)) == q * (q ** (n - 1) - 1) // (q - 1)
    assert sr_generators(c) == sr_generators(c, "brute")


def test_h_from_f_simplex():
    # full simplex on 3 vertices: f = (3, 3, 1), h = (1, 0, 0, 0)
    assert h_from_f((3, 3, 1), 3) == (1, 0, 0, 0)


def test_caps():
    old = LIMITS.max_exchange_vertices
    LIMITS.max_exchange_vertices = 5
    try:
        with pytest.raises(ResourceError):
            check_matroid_exchange(build_delta(2, 2, 2))
    finally:
        LIMITS.max_exchange_vertices = old
    with pytest.raises(UsageError):
        f_vector(TRIANGLE, "mobius")
    with pytest.raises(UsageError):
        build_affine_K(1, 2)
