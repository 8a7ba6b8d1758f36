"""Reduced powers P^k and their antipodes acting on F_q[x_1, ..., x_n].

``P^k(x^m) = binom(m, k) x^(m + (q-1)k)`` on a variable, extended to
monomials by the Cartan formula.  The antipode is computed from the
recursion ``sum_{i+j=k} P^i chi(P^j) = 0``; the multiplicative closed form
of the signed total conjugate operation (``x -> x + x^q + x^(q^2) + ...``)
is kept as an independent route.
"""

from __future__ import annotations

import functools

import numpy as np

from .config import check_dim
from .errors import UsageError
from .field import FieldSpec, as_field
from .linalg import EchelonAccumulator, Subspace
from .poly import Monomial, Polynomial, monomial_basis, monomial_index, sym_dim


def binom_mod_p(m: int, k: int, p: int) -> int:
    """binom(m, k) mod p by Lucas' theorem (m, k >= 0)."""
    if k < 0 or k > m:
        return 0
    r = 1
    while k:
        m, mi = divmod(m, p)
        k, ki = divmod(k, p)
        if ki > mi:
            return 0
        r = r * _small_binom(mi, ki, p) % p
    return r


@functools.lru_cache(maxsize=None)
def _small_binom(m: int, k: int, p: int) -> int:
    r = 1
    for i in range(k):
        r = r * (m - i) // (i + 1)
    return r % p


def alpha(a: int, q: int) -> int:
    """Sum of the base-q digits of a."""
    s = 0
    while a:
        a, r = divmod(a, q)
        s += r
    return s


@functools.lru_cache(maxsize=None)
def _var_steps(a: int, q: int, p: int, kmax: int) -> tuple[tuple[int, int], ...]:
    """(k, binom(a, k) mod p) for 0 <= k <= min(a, kmax) with nonzero binomial."""
    return tuple((k, b) for k in range(min(a, kmax) + 1) if (b := binom_mod_p(a, k, p)))


@functools.lru_cache(maxsize=200000)
def _p_monomial(k: int, m: Monomial, q: int, p: int) -> tuple[tuple[Monomial, int], ...]:
    """P^k(x^m) over F_p-coefficients (integers mod p)."""
    if k == 0:
        return ((m, 1),)
    if k > sum(m):
        return ()
    n = len(m)
    out: dict[Monomial, int] = {}
    steps = [_var_steps(a, q, p, k) for a in m]

    def rec(i: int, left: int, exps: list[int], coef: int):
        if i == n - 1:
            for kk, b in steps[i]:
                if kk == left:
                    e = tuple(exps) + (m[i] + (q - 1) * kk,)
                    out[e] = (out.get(e, 0) + coef * b) % p
                    break
            return
        for kk, b in steps[i]:
            if kk > left:
                break
            exps.append(m[i] + (q - 1) * kk)
            rec(i + 1, left - kk, exps, coef * b % p)
            exps.pop()

    rec(0, k, [], 1)
    return tuple((e, c) for e, c in out.items() if c)


def _apply_linear(f: Polynomial, fn) -> Polynomial:
    """Extend a monomial-to-polynomial map (F_p coefficients) linearly."""
    F = f.field
    mt, at = F.mul_table, F.add_table
    t: dict[Monomial, int] = {}
    for m, c in f.terms.items():
        row = mt[c]
        for e, b in fn(m):
            t[e] = int(at[t.get(e, 0), row[b]])
    return Polynomial(F, f.n, t)


def steenrod_p(k: int, f: Polynomial) -> Polynomial:
    """P^k(f)."""
    if k < 0:
        raise UsageError("negative operation index")
    F = f.field
    return _apply_linear(f, lambda m: _p_monomial(k, m, F.q, F.p))


@functools.lru_cache(maxsize=100000)
def _chi_monomial(k: int, m: Monomial, q: int, p: int) -> tuple[tuple[Monomial, int], ...]:
    """chi(P^k)(x^m) via chi(P^k) = -sum_{i=1..k} P^i chi(P^(k-i))."""
    if k == 0:
        return ((m, 1),)
    acc: dict[Monomial, int] = {}
    for i in range(1, k + 1):
        for e1, c1 in _chi_monomial(k - i, m, q, p):
            for e2, c2 in _p_monomial(i, e1, q, p):
                acc[e2] = (acc.get(e2, 0) - c1 * c2) % p
    return tuple((e, c) for e, c in acc.items() if c)


def chi_p(k: int, f: Polynomial) -> Polynomial:
    """chi(P^k)(f) from the antipode recursion, memoised per (k, monomial)."""
    if k < 0:
        raise UsageError("negative operation index")
    F = f.field
    return _apply_linear(f, lambda m: _chi_monomial(k, m, F.q, F.p))


def total_p(f: Polynomial, cap: int) -> Polynomial:
    """sum_i P^i(f) truncated above degree cap (multiplicative, x -> x + x^q)."""
    F, n = f.field, f.n
    lin = [Polynomial.var(F, n, i) + Polynomial.var(F, n, i) ** F.q for i in range(n)]
    return _multiplicative_image(f, lin, cap)


def _ph_linear(F: FieldSpec, n: int, i: int, cap: int) -> Polynomial:
    x = Polynomial.var(F, n, i)
    out = Polynomial.zero(F, n)
    e = 1
    while e <= cap:
        out = out + x**e
        e *= F.q
    return out


def _multiplicative_image(f: Polynomial, images: list[Polynomial], cap: int) -> Polynomial:
    F, n = f.field, f.n
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        if (i, e) not in powers:
            if e == 0:
                powers[(i, e)] = Polynomial.one(F, n)
            elif e == 1:
                powers[(i, e)] = images[i].truncate(cap)
            else:
                h = power(i, e // 2)
                sq = (h * h).truncate(cap)
                powers[(i, e)] = (sq * images[i]).truncate(cap) if e % 2 else sq
        return powers[(i, e)]

    acc = Polynomial.zero(F, n)
    for m, c in f.terms.items():
        term = Polynomial.const(F, n, c)
        for i, e in enumerate(m):
            if e:
                term = (term * power(i, e)).truncate(cap)
        acc = acc + term
    return acc


def total_ph(f: Polynomial, cap: int) -> Polynomial:
    """Signed total conjugate operation sum_i (-1)^i chi(P^i)(f), truncated at cap."""
    F, n = f.field, f.n
    return _multiplicative_image(f, [_ph_linear(F, n, i, cap) for i in range(n)], cap)


def ph_closed_form(r: int, f: Polynomial) -> Polynomial:
    """(-1)^r chi(P^r)(f) for homogeneous f, read off the multiplicative formula."""
    if f.is_zero():
        return f
    if not f.is_homogeneous():
        raise UsageError("closed form expects a homogeneous polynomial")
    target = f.degree() + r * (f.field.q - 1)
    return total_ph(f, target).homogeneous_part(target)


def chi_linear_form(k: int, x: Polynomial) -> Polynomial:
    """chi(P^k)(x) for a linear form: (-1)^k x^(q^r) if k = (q^r - 1)/(q - 1), else 0."""
    F = x.field
    q = F.q
    r, s = 0, 0
    while s < k:
        s = s * q + 1
        r += 1
    if s != k:
        return Polynomial.zero(F, x.n)
    out = x ** (q**r)
    return -out if k % 2 else out


# --- hit spaces --------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _hit_space(n: int, d: int, F: FieldSpec) -> Subspace:
    q = F.q
    N = sym_dim(n, d)
    acc = EchelonAccumulator(F, N)
    idx = monomial_index(n, d)
    i = 1
    while i * (q - 1) <= d:
        src = d - i * (q - 1)
        rows = []
        for m in monomial_basis(n, src):
            terms = _p_monomial(i, m, q, F.p)
            if not terms:
                continue
            v = np.zeros(N, dtype=np.uint8)
            for e, c in terms:
                v[idx[e]] = c
            rows.append(v)
        if rows:
            acc.add(np.array(rows))
        i += 1
    return acc.subspace()


class HitSpace:
    """Degree-d part of P^+ Sym, as an echelon subspace of the monomial coordinates."""

    def __init__(self, n: int, d: int, field):
        self.n, self.d = n, d
        self.spec = as_field(field)
        check_dim(sym_dim(n, d), what=f"Sym^{d} in {n} variables")  # before the memo, so caps apply to cached degrees too
        self.subspace = _hit_space(n, d, self.spec)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return self.subspace.contains(f.to_vector(self.d))


def hit_space(n: int, d: int, field) -> HitSpace:
    return HitSpace(n, d, field)


def quot_dim(n: int, d: int, field) -> int:
    """dim of the degree-d indecomposables Sym^d / (P^+ Sym)^d."""
    if d < 0:
        return 0
    return sym_dim(n, d) - hit_space(n, d, field).dim


def is_hit(f: Polynomial) -> bool:
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        return all(is_hit(f.homogeneous_part(d)) for d in {sum(m) for m in f.terms})
    return hit_space(f.n, f.degree(), f.field).contains(f)


def chi_trick_check(f: Polynomial, g: Polynomial, k: int) -> bool:
    """P^k(f) g - f chi(P^k)(g) is hit."""
    diff = steenrod_p(k, f) * g - f * chi_p(k, g)
    return is_hit(diff)


def clear_caches() -> None:
    _p_monomial.cache_clear()
    _chi_monomial.cache_clear()
    _hit_space.cache_clear()
