"""Seeded randomized identity checks.

Each function draws ``cases`` random instances from a numpy ``Generator`` and
returns the number that failed, so the CLI suite and the test-suite share the
same batteries.  Polynomials are kept small enough that hit-space
membership stays cheap.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _accel
from .field import BUILTIN_MODULI, FieldSpec, get_field
from .grouprep import steinberg_idempotent, twisted_idempotent
from .linalg import gf2_pack_rows, gf2_rank_bits, rank
from .poly import Polynomial, monomial_basis
from .steenrod import chi_p, chi_trick_check, steenrod_p

PROPERTY_FIELDS = (2, 3, 4, 5)


def random_homogeneous(rng: np.random.Generator, F: FieldSpec, n: int, d: int, terms: int = 3) -> Polynomial:
    basis = monomial_basis(n, d)
    picks = rng.choice(len(basis), size=min(terms, len(basis)), replace=False)
    out: dict = {}
    for i in picks:
        c = int(rng.integers(1, F.q))
        out[basis[int(i)]] = c
    return Polynomial(F, n, out)


def _draw(rng: np.random.Generator, max_deg: int):
    F = get_field(int(rng.choice(PROPERTY_FIELDS)))
    n = int(rng.integers(1, 4))
    f = random_homogeneous(rng, F, n, int(rng.integers(0, max_deg + 1)))
    g = random_homogeneous(rng, F, n, int(rng.integers(0, max_deg + 1)))
    return F, n, f, g


def cartan_failures(rng: np.random.Generator, cases: int = 200) -> int:
    """P^k(fg) = sum_i P^i(f) P^(k-i)(g)."""
    bad = 0
    for _ in range(cases):
        F, n, f, g = _draw(rng, 4)
        k = int(rng.integers(0, 5))
        rhs = Polynomial.zero(F, n)
        for i in range(k + 1):
            rhs = rhs + steenrod_p(i, f) * steenrod_p(k - i, g)
        bad += steenrod_p(k, f * g) != rhs
    return bad


def antipode_failures(rng: np.random.Generator, cases: int = 200) -> int:
    """sum_{i+j=k} P^i chi(P^j) = 0 for k > 0, evaluated on random f."""
    bad = 0
    for _ in range(cases):
        F, n, f, _g = _draw(rng, 5)
        k = int(rng.integers(1, 5))
        acc = Polynomial.zero(F, n)
        for j in range(k + 1):
            acc = acc + steenrod_p(k - j, chi_p(j, f))
        bad += not acc.is_zero()
    return bad


def chi_trick_failures(rng: np.random.Generator, cases: int = 200) -> int:
    """P^k(f) g - f chi(P^k)(g) is hit, for small total degree."""
    bad = 0
    for _ in range(cases):
        F = get_field(int(rng.choice((2, 3))))
        n = int(rng.integers(1, 3))
        k = int(rng.integers(1, 3))
        budget = 10 - k * (F.q - 1)
        df = int(rng.integers(0, budget // 2 + 1))
        dg = int(rng.integers(0, budget - df + 1))
        f = random_homogeneous(rng, F, n, df)
        g = random_homogeneous(rng, F, n, dg)
        bad += not chi_trick_check(f, g, k)
    return bad


def field_axiom_failures() -> int:
    """Exhaustive ring and field axioms for every built-in q."""
    bad = 0
    for q in sorted(BUILTIN_MODULI):
        F = get_field(q)
        els = F.elements()
        for a, b in itertools.product(els, repeat=2):
            bad += F.add(a, b) != F.add(b, a)
            bad += F.mul(a, b) != F.mul(b, a)
            bad += F.sub(F.add(a, b), b) != a
        for a, b, c in itertools.product(els, repeat=3):
            bad += F.add(F.add(a, b), c) != F.add(a, F.add(b, c))
            bad += F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c))
            bad += F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c))
        for a in els:
            bad += F.add(a, 0) != a or F.mul(a, 1) != a or F.add(a, F.neg(a)) != 0
            if a:
                bad += F.mul(a, F.inv(a)) != 1
                bad += F.pow(a, q - 1) != 1
    return bad


def rank_failures(rng: np.random.Generator, cases: int = 200) -> int:
    """Byte, bit-packed, numba and numpy reductions agree on rank and RREF."""
    bad = 0
    for t in range(cases):
        if t % 2 == 0:
            F = get_field(2)
            rows = int(rng.integers(1, 40))
            cols = int(rng.integers(256, 400))
            a = (rng.random((rows, cols)) < 0.05).astype(np.uint8)
            a[rng.integers(0, rows)] = a[0]
            r_bits = gf2_rank_bits(gf2_pack_rows(a))
        else:
            F = get_field(int(rng.choice((3, 4, 5, 9))))
            rows, cols = int(rng.integers(1, 25)), int(rng.integers(1, 25))
            a = rng.integers(0, F.q, size=(rows, cols)).astype(np.uint8)
            if rows > 1:
                a[-1] = a[0]
            r_bits = None
        outs = []
        for use_numba in (False, True) if _accel.HAVE_NUMBA else (False,):
            m = a.copy()
            piv = _accel.rref_inplace(m, F, use_numba)
            outs.append((len(piv), m.tobytes()))
        m = a.copy()
        piv = _accel.rref_numpy(m, F.add_table, F.mul_table, F.neg_table, F.inv_table)
        outs.append((len(piv), m.tobytes()))
        ranks = {o[0] for o in outs} | {rank(F, a)}
        if r_bits is not None:
            ranks.add(r_bits)
        bad += len(ranks) != 1 or len({o[1] for o in outs}) != 1
    return bad


IDEMPOTENT_CASES = ((1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (2, 4), (1, 5), (2, 5))


def idempotent_failures() -> int:
    """st_n and every twist st_n^(i) square to themselves."""
    bad = 0
    for n, q in IDEMPOTENT_CASES:
        bad += not steinberg_idempotent(n, q).is_idempotent()
        for i in range(1, q - 1):
            bad += not twisted_idempotent(n, q, i).is_idempotent()
    return bad
