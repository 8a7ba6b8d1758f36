"""The mod 2 Steenrod algebra in the admissible basis, Brown-Gitler module
dimensions, and the Steinberg-summand decomposition of R_{n,2}.

Elements are sets of admissible sequences (coefficients in F_2, so a set
with symmetric difference is enough).  Adem relations rewrite any word;
every rewrite lowers ``sum(k * i_k)``, so normalization terminates.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import cache
from .errors import DomainError, UsageError
from .field import get_field
from .grouprep import DegreeCarrier, action_matrix, steinberg_idempotent, steinberg_apply
from .linalg import EchelonAccumulator, Subspace, rank, span
from .poly import Polynomial, monomial_index, sym_dim
from .steenrod import binom_mod_p, chi_p, steenrod_p

Word = tuple  # tuple of positive ints

MAX_BG_DEGREE = 40
MAX_BG_K = 64


def is_admissible(w: Sequence[int]) -> bool:
    return all(w[i] >= 2 * w[i + 1] for i in range(len(w) - 1)) and all(a > 0 for a in w)


@functools.lru_cache(maxsize=None)
def _normalize(w: Word) -> frozenset:
    w = tuple(a for a in w if a)
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if a < 2 * b:
            out: set = set()
            for c in range(a // 2 + 1):
                if binom_mod_p(b - c - 1, a - 2 * c, 2):
                    out ^= _normalize(w[:i] + (a + b - c, c) + w[i + 2 :])
            return frozenset(out)
    return frozenset({w})


@dataclass(frozen=True)
class SteenrodElem2:
    """Element of the mod 2 Steenrod algebra: a set of admissible sequences."""

    support: frozenset = frozenset()

    @classmethod
    def sq(cls, *exps: int) -> SteenrodElem2:
        return adem_normalize(exps)

    @classmethod
    def one(cls) -> SteenrodElem2:
        return cls(frozenset({()}))

    def __add__(self, other: SteenrodElem2) -> SteenrodElem2:
        return SteenrodElem2(self.support ^ other.support)

    def __mul__(self, other: SteenrodElem2) -> SteenrodElem2:
        out: set = set()
        for a in self.support:
            for b in other.support:
                out ^= _normalize(a + b)
        return SteenrodElem2(frozenset(out))

    def is_zero(self) -> bool:
        return not self.support

    def degrees(self) -> set[int]:
        return {sum(w) for w in self.support}

    def terms(self) -> list[Word]:
        return sorted(self.support, key=lambda w: (sum(w), w), reverse=True)

    def __call__(self, f: Polynomial) -> Polynomial:
        """Act on a polynomial over F_2 (Sq^i = P^i at q = 2)."""
        if f.field.q != 2:
            raise UsageError("mod 2 operations act on F_2 polynomials only")
        out = Polynomial.zero(f.field, f.n)
        for w in self.support:
            g = f
            for a in reversed(w):
                g = steenrod_p(a, g)
            out = out + g
        return out

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join("".join(f"Sq^{a}" for a in w) if w else "1" for w in self.terms())


def adem_normalize(word: Iterable[int]) -> SteenrodElem2:
    w = tuple(int(a) for a in word)
    if any(a < 0 for a in w):
        raise UsageError("negative Sq exponent")
    memo = cache.table("adem")
    hit = memo.get(w)
    if hit is None:
        hit = memo[w] = _normalize(w)
        cache.mark_dirty("adem")
    return SteenrodElem2(hit)


@functools.lru_cache(maxsize=None)
def admissible_basis(m: int) -> tuple[Word, ...]:
    """Admissible sequences of degree m, in decreasing lex order."""
    if m == 0:
        return ((),)

    def rec(left: int, maxfirst: int):
        # sequences summing to left whose first entry is <= maxfirst
        if left == 0:
            yield ()
            return
        for a in range(min(left, maxfirst), 0, -1):
            for rest in rec(left - a, a // 2):
                yield (a,) + rest

    return tuple(rec(m, m))


@functools.lru_cache(maxsize=None)
def chi_sq(n: int) -> SteenrodElem2:
    """chi(Sq^n) from sum_{i=0..n} Sq^i chi(Sq^(n-i)) = 0."""
    if n < 0:
        raise UsageError("negative index")
    if n == 0:
        return SteenrodElem2.one()
    acc = SteenrodElem2()
    for i in range(1, n + 1):
        acc = acc + SteenrodElem2.sq(i) * chi_sq(n - i)
    return acc


def chi_word(w: Sequence[int]) -> SteenrodElem2:
    """chi(Sq^a1 ... Sq^ak) = chi(Sq^ak) ... chi(Sq^a1)."""
    out = SteenrodElem2.one()
    for a in w:
        out = chi_sq(a) * out
    return out


# --- Brown-Gitler modules ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def _bg_dim(k: int, m: int) -> int:
    basis = admissible_basis(m)
    index = {w: i for i, w in enumerate(basis)}
    rows = []
    for i in range(k // 2 + 1, m + 1):
        c = chi_sq(i)
        for a in admissible_basis(m - i):
            prod = SteenrodElem2(frozenset({a})) * c
            if prod.support:
                v = np.zeros(len(basis), dtype=np.uint8)
                for w in prod.support:
                    v[index[w]] = 1
                rows.append(v)
    r = rank(2, np.array(rows)) if rows else 0
    return len(basis) - r


def bg_dims(k: int, cap: int) -> list[int]:
    """dim BG(k)^m for 0 <= m <= cap."""
    if k < 0 or k > MAX_BG_K or cap > MAX_BG_DEGREE:
        raise UsageError(f"bg_dims supports k <= {MAX_BG_K} and degrees <= {MAX_BG_DEGREE}")
    return [_bg_dim(k, m) for m in range(cap + 1)]


def bg2n_sequences(n: int) -> list[tuple[int, ...]]:
    """(i_1..i_n) with 2^(n-1) >= i_1, i_k >= 2 i_(k+1), i_n >= 0."""
    def rec(k: int, bound: int):
        if k == n:
            yield ()
            return
        for a in range(bound + 1):
            for rest in rec(k + 1, a // 2):
                yield (a,) + rest

    return list(rec(0, 2 ** (n - 1))) if n > 0 else [()]


def bg2n_count(n: int, cap: int) -> list[int]:
    out = [0] * (cap + 1)
    for s in bg2n_sequences(n):
        if sum(s) <= cap:
            out[sum(s)] += 1
    return out


def mahowald_check(j: int, cap: int) -> bool:
    """dim BG(2^j)^m = dim BG(2^(j-1))^(m - 2^(j-1)) + dim BG(2^j - 1)^m for m <= cap."""
    if j < 1:
        raise UsageError("need j >= 1")
    a = bg_dims(2**j, cap)
    b = bg_dims(2 ** (j - 1), cap)
    c = bg_dims(2**j - 1, cap)
    s = 2 ** (j - 1)
    return all(a[m] == (b[m - s] if m >= s else 0) + c[m] for m in range(cap + 1))


# --- Laurent classes Sq^J(1/(x_1...x_n)) ---------------------------------------


def binom2(m: int, a: int) -> int:
    """binom(m, a) mod 2 for any integer m and a >= 0."""
    if a < 0:
        return 0
    if m >= 0:
        return int(a <= m and (a & ~m) == 0)
    return binom2(a - m - 1, a)


def _sq_laurent_monomial(a: int, m: tuple[int, ...]) -> set:
    out: set = set()
    n = len(m)

    def rec(i: int, left: int, acc: tuple):
        if i == n - 1:
            if binom2(m[i], left):
                out.symmetric_difference_update({acc + (m[i] + left,)})
            return
        for t in range(left + 1):
            if binom2(m[i], t):
                rec(i + 1, left - t, acc + (m[i] + t,))

    rec(0, a, ())
    return out


def sq_laurent(a: int, f: set) -> set:
    out: set = set()
    for m in f:
        out ^= _sq_laurent_monomial(a, m)
    return out


def inoue_class(J: Sequence[int]) -> Polynomial:
    """Sq^(j_1) ... Sq^(j_n) (1/(x_1...x_n)) as a polynomial over F_2."""
    n = len(J)
    f = {tuple([-1] * n)}
    for a in reversed(J):
        f = sq_laurent(a, f)
    if any(min(m) < 0 for m in f):
        raise DomainError(f"Sq^{tuple(J)}(1/x) is not a polynomial")
    return Polynomial(get_field(2), n, {m: 1 for m in f})


def steinberg_tuples(n: int) -> list[tuple[int, ...]]:
    """(j_1..j_n) with 2^n >= j_1, j_k >= 2 j_(k+1), j_n > 0."""
    def rec(k: int, bound: int):
        if k == n:
            yield ()
            return
        for a in range(1, bound + 1):
            for rest in rec(k + 1, a // 2):
                yield (a,) + rest

    return [t for t in rec(0, 2**n) if len(t) == n]


def inoue_leading_term_check(n: int, J: Sequence[int]) -> bool:
    J = tuple(J)
    if len(J) != n or tuple(J) not in set(steinberg_tuples(n)):
        raise UsageError(f"{J} is not a Steinberg tuple for n={n}")
    f = inoue_class(J)
    return f.leading_monomial() == tuple(j - 1 for j in J)


def generator_tuple(n: int, j: int) -> tuple[int, ...]:
    """(2^n, ..., 2^j omitted, ..., 1)."""
    return tuple(2**e for e in range(n, -1, -1) if e != j)


# --- Theorem 1.5 ----------------------------------------------------------------


@dataclass
class DecompositionReport:
    n: int
    d: int
    bg_path: list[int]
    combinatorial_path: list[int]
    idempotent_path: list[int]
    relations_hold: bool
    generators_fixed: bool
    generation_holds: bool
    independence_holds: bool
    details: dict = field(default_factory=dict)

    @property
    def paths_agree(self) -> bool:
        return self.bg_path == self.combinatorial_path == self.idempotent_path

    @property
    def ok(self) -> bool:
        return (
            self.paths_agree
            and self.relations_hold
            and self.generators_fixed
            and self.generation_holds
            and self.independence_holds
        )


def _bg_path(n: int, d: int) -> list[int]:
    out = [0] * (d + 1)
    for j in range(n + 1):
        k = 2**j - 1
        shift = d - k
        dims = bg_dims(k, k)
        for m, v in enumerate(dims):
            if shift + m <= d:
                out[shift + m] += v
        # BG(k) vanishes above degree k
    return out


def _combinatorial_path(n: int, d: int) -> list[int]:
    out = [0] * (d + 1)
    for t in steinberg_tuples(n):
        m = sum(t) - n
        if 0 <= m <= d:
            out[m] += 1
    return out


def decomposition_check(n: int) -> DecompositionReport:
    from .quotient_ring import ring_R

    if n < 1:
        raise UsageError("need n >= 1")
    F = get_field(2)
    d = 2 * (2**n - 1) - n
    r = ring_R(n, F, 2)
    st = steinberg_idempotent(n, F)
    images: dict[int, Subspace] = {}
    idem = []
    for m in range(d + 1):
        car = r.carrier(m)
        M = action_matrix(st, car)
        if car.dim and not (M @ M == M):
            raise DomainError("st_n does not act idempotently")
        images[m] = span(F, M.entries, car.dim) if car.dim else Subspace.zero(F, 0)
        idem.append(images[m].dim)

    gens = {j: inoue_class(generator_tuple(n, j)) for j in range(n + 1)}

    # (d) chi(Sq^i)(alpha_j) = 0 in R for 2i > 2^j - 1
    relations = True
    for j, a in gens.items():
        deg = a.degree()
        for i in range(2 ** (j - 1) if j else 1, d - deg + 1):
            if 2 * i > 2**j - 1 and not r.is_zero(chi_p(i, a)):
                relations = False

    # generators are fixed by st_n
    fixed = True
    for j, a in gens.items():
        m = a.degree()
        v = r.coords(a, m)
        if not np.array_equal(F.matmul(v[None, :], action_matrix(st, r.carrier(m)).entries)[0], v):
            fixed = False

    # the A-span of the generators is the whole st-image
    generated = _a_span(r, gens.values(), d)
    generation = all(generated[m] == images[m] for m in range(d + 1))

    # Steinberg-tuple classes are linearly independent in R
    indep = True
    by_deg: dict[int, list] = {}
    for t in steinberg_tuples(n):
        f = inoue_class(t)
        by_deg.setdefault(f.degree(), []).append(r.coords(f, f.degree()))
    for m, rows in by_deg.items():
        if rank(F, np.array(rows)) != len(rows):
            indep = False

    return DecompositionReport(
        n,
        d,
        _bg_path(n, d),
        _combinatorial_path(n, d),
        idem,
        relations,
        fixed,
        generation,
        indep,
        {"generator_degrees": {j: g.degree() for j, g in gens.items()}},
    )


def _a_span(r, gens: Iterable[Polynomial], d: int) -> dict[int, Subspace]:
    """Degreewise A-submodule of R generated by ``gens``: close under Sq^(2^a)."""
    F = r.spec
    n = r.n
    spaces: dict[int, Subspace] = {}
    seeds: dict[int, list] = {}
    for g in gens:
        seeds.setdefault(g.degree(), []).append(g)
    for m in range(d + 1):
        dim_m = r.dim(m)
        acc = EchelonAccumulator(F, dim_m)
        rows = [r.coords(g, m) for g in seeds.get(m, [])]
        a = 1
        while a <= m:
            src = spaces.get(m - a)
            if src is not None and src.dim:
                reps = _lift(r, m - a, src)
                rows.extend(r.coords(steenrod_p(a, f), m) for f in reps)
            a *= 2
        if rows and dim_m:
            acc.add(np.array(rows))
        spaces[m] = acc.subspace()
    return spaces


def _lift(r, m: int, sub: Subspace) -> list[Polynomial]:
    """Polynomials representing the basis of a subspace of R^m."""
    cols = r.ideal.degree_space(m).nonpivots
    from .poly import monomial_basis

    basis = monomial_basis(r.n, m)
    out = []
    for row in sub.basis:
        out.append(Polynomial(r.spec, r.n, {basis[cols[j]]: int(c) for j, c in enumerate(row) if c}))
    return out
