"""GL_n(F_q), its group algebra, and the Steinberg idempotents acting on
graded pieces of Sym or of a quotient ring.

Two routes compute the action of st_n^(i) on Sym^d:

* the generic one sums ``coeff(g) * Sym^d(g)`` over the group-algebra terms;
* the factorized one uses ``st = c * (sum_t t)(sum_u u)(sum_sigma sgn(sigma) sigma)``
  with U written as an ordered product of root subgroups.  Every factor is a
  sparse matrix with entries in F_p, because ``sum_{s in F_q} s^e`` is -1 when
  e >= 1 and (q-1) | e and 0 otherwise.

The generic route is the oracle; the factorized one is what makes GL_4(F_2)
on a 3654-dimensional carrier cheap.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from .config import LIMITS
from .errors import DomainError, ResourceError, UsageError
from .field import FieldSpec, as_field
from .linalg import MatrixGF, Subspace, rank
from .poly import GLElement, monomial_basis, monomial_index, permutation_sign, sym_dim
from .steenrod import binom_mod_p


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def enumerate_gl(n: int, q) -> list[GLElement]:
    """All invertible n x n matrices, row-major lexicographic order of entries."""
    F = as_field(q)
    order = gl_order(n, F.q)
    if order > LIMITS.max_group_order:
        raise ResourceError(f"|GL_{n}(F_{F.q})| = {order} exceeds max_group_order={LIMITS.max_group_order}")
    out = []
    for entries in itertools.product(range(F.q), repeat=n * n):
        rows = [entries[i * n : (i + 1) * n] for i in range(n)]
        g = GLElement(F, rows, check=False)
        if g.det():
            out.append(g)
    return out


def upper_triangular(n: int, q) -> list[GLElement]:
    """The Borel subgroup B_n."""
    F = as_field(q)
    free = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for diag in itertools.product(range(1, F.q), repeat=n):
        for vals in itertools.product(range(F.q), repeat=len(free)):
            m = [[0] * n for _ in range(n)]
            for i, t in enumerate(diag):
                m[i][i] = t
            for (i, j), v in zip(free, vals):
                m[i][j] = v
            out.append(GLElement(F, m, check=False))
    return out


def permutation_element(F: FieldSpec, perm) -> GLElement:
    n = len(perm)
    return GLElement(F, [[int(perm[i] == j) for j in range(n)] for i in range(n)], check=False)


@dataclass
class GroupAlgElem:
    """Finite F_q-combination of elements of GL_n(F_q)."""

    spec: FieldSpec
    n: int
    terms: dict = dc_field(default_factory=dict)
    structure: tuple | None = None  # ("st", n, q, i) when built as a Steinberg idempotent

    def __post_init__(self):
        self.terms = {g: int(c) for g, c in self.terms.items() if c}

    @classmethod
    def identity(cls, spec, n: int) -> GroupAlgElem:
        F = as_field(spec)
        return cls(F, n, {GLElement.identity(F, n): 1})

    @classmethod
    def of(cls, g: GLElement, c: int = 1) -> GroupAlgElem:
        return cls(g.field, g.n, {g: c})

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: GroupAlgElem):
        if other.spec != self.spec or other.n != self.n:
            raise UsageError("group algebra elements over different groups")

    def __add__(self, other: GroupAlgElem) -> GroupAlgElem:
        self._check(other)
        F = self.spec
        t = dict(self.terms)
        for g, c in other.terms.items():
            t[g] = F.add(t.get(g, 0), c)
        return GroupAlgElem(F, self.n, t)

    def scale(self, c: int) -> GroupAlgElem:
        F = self.spec
        return GroupAlgElem(F, self.n, {g: F.mul(c, v) for g, v in self.terms.items()})

    def __mul__(self, other: GroupAlgElem) -> GroupAlgElem:
        self._check(other)
        F = self.spec
        at, mt = F.add_table, F.mul_table
        t: dict = {}
        for g, a in self.terms.items():
            row = mt[a]
            for h, b in other.terms.items():
                k = g @ h
                t[k] = int(at[t.get(k, 0), row[b]])
        return GroupAlgElem(F, self.n, t)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAlgElem)
            and self.spec == other.spec
            and self.n == other.n
            and self.terms == other.terms
        )

    def is_idempotent(self) -> bool:
        return self * self == self

    def twist(self, i: int) -> GroupAlgElem:
        """phi_i: coefficient at g multiplied by det(g)^(-i)."""
        F = self.spec
        t = {g: F.mul(c, F.pow(F.inv(g.det()), i)) for g, c in self.terms.items()}
        st = None
        if self.structure and self.structure[0] == "st" and self.structure[3] == 0:
            st = ("st", self.n, F.q, i)
        return GroupAlgElem(F, self.n, t, st)


def steinberg_scalar(n: int, F: FieldSpec) -> int:
    """1 / [GL_n : U_n] as a packed element of F_p inside F_q."""
    index = gl_order(n, F.q) // F.q ** (n * (n - 1) // 2)
    m = index % F.p
    if m == 0:
        raise DomainError("index divisible by p")  # cannot happen: it is prod (q^i - 1)
    return F.inv(F.from_int(m))


def steinberg_idempotent(n: int, q) -> GroupAlgElem:
    """st_n = [GL_n:U_n]^(-1) sum_{b in B, sigma} sgn(sigma) b sigma."""
    F = as_field(q)
    support = (F.q - 1) ** n * F.q ** (n * (n - 1) // 2) * math.factorial(n)
    if support > LIMITS.max_group_order:
        raise ResourceError(f"st_{n} over F_{F.q} has {support} terms, above max_group_order={LIMITS.max_group_order}")
    c = steinberg_scalar(n, F)
    neg_c = F.neg(c)
    perms = [(permutation_element(F, p), permutation_sign(p)) for p in itertools.permutations(range(n))]
    terms: dict = {}
    for b in upper_triangular(n, F):
        for s, sign in perms:
            g = b @ s
            terms[g] = F.add(terms.get(g, 0), c if sign == 1 else neg_c)
    return GroupAlgElem(F, n, terms, ("st", n, F.q, 0))


def twisted_idempotent(n: int, q, i: int) -> GroupAlgElem:
    F = as_field(q)
    if not 0 <= i <= F.q - 2:
        raise UsageError(f"twist index {i} outside 0..{F.q - 2}")
    return steinberg_idempotent(n, F).twist(i)


# --- carriers ----------------------------------------------------------------


@dataclass(frozen=True)
class DegreeCarrier:
    """Sym^d, or Sym^d / I^d when ``ideal`` (a subspace of Sym^d) is given.

    Quotient coordinates are the non-pivot monomials of the ideal's echelon
    basis; the representative of coordinate j is that monomial.
    """

    spec: FieldSpec
    n: int
    d: int
    ideal: Subspace | None = None

    @property
    def ambient(self) -> int:
        return sym_dim(self.n, self.d)

    @property
    def rep_columns(self) -> np.ndarray:
        if self.ideal is None:
            return np.arange(self.ambient)
        return self.ideal.nonpivots

    @property
    def dim(self) -> int:
        return len(self.rep_columns)

    def reps(self) -> np.ndarray:
        r = np.zeros((self.dim, self.ambient), dtype=np.uint8)
        r[np.arange(self.dim), self.rep_columns] = 1
        return r

    def project(self, rows: np.ndarray) -> np.ndarray:
        if self.ideal is None:
            return np.asarray(rows, dtype=np.uint8)
        return self.ideal.coset_coords(rows)


# --- dense Sym^d(g) ----------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _shift_maps(n: int, d: int) -> np.ndarray:
    """shift[l, j] = index in degree d of (monomial j of degree d-1) * x_l."""
    src = monomial_basis(n, d - 1)
    idx = monomial_index(n, d)
    out = np.empty((n, len(src)), dtype=np.int64)
    for l in range(n):
        for j, m in enumerate(src):
            out[l, j] = idx[m[:l] + (m[l] + 1,) + m[l + 1 :]]
    return out


@functools.lru_cache(maxsize=None)
def _parents(n: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """For each degree-d monomial: its first variable k and the index of m - e_k."""
    idx = monomial_index(n, d - 1)
    ks, par = [], []
    for m in monomial_basis(n, d):
        k = next(i for i, a in enumerate(m) if a)
        ks.append(k)
        par.append(idx[m[:k] + (m[k] - 1,) + m[k + 1 :]])
    return np.array(ks, dtype=np.int64), np.array(par, dtype=np.int64)


def sym_power_matrix(g: GLElement, d: int) -> np.ndarray:
    """Matrix of f -> f.g on Sym^d in the monomial basis (row = source)."""
    F, n = g.field, g.n
    check_n = sym_dim(n, d)
    if check_n > LIMITS.max_dim:
        raise ResourceError(f"Sym^{d} has dimension {check_n} > max_dim")
    G = g.as_array()
    at, mt = F.add_table, F.mul_table
    M = np.ones((1, 1), dtype=np.uint8)
    for e in range(1, d + 1):
        ks, par = _parents(n, e)
        shift = _shift_maps(n, e)
        prev = M[par]  # rows of degree e-1 images
        out = np.zeros((len(ks), sym_dim(n, e)), dtype=np.uint8)
        for l in range(n):
            coef = G[ks, l]
            if not coef.any():
                continue
            contrib = mt[coef[:, None], prev]
            out[:, shift[l]] = at[out[:, shift[l]], contrib]
        M = out
    return M


def _action_generic(a: GroupAlgElem, carrier: DegreeCarrier) -> np.ndarray:
    F = a.spec
    at, mt = F.add_table, F.mul_table
    cols = carrier.rep_columns
    acc = np.zeros((len(cols), carrier.ambient), dtype=np.uint8)
    for g, c in a.terms.items():
        M = sym_power_matrix(g, carrier.d)[cols]
        acc = at[acc, mt[c][M]]
    return carrier.project(acc)


# --- factorized Steinberg action ---------------------------------------------


def _sum_pow(e: int, q: int, p: int, include_zero: bool) -> int:
    """sum of s^e over F_q (or F_q^x), as an integer mod p."""
    if include_zero and e == 0:
        return 0
    return (p - 1) if e % (q - 1) == 0 else 0


@functools.lru_cache(maxsize=64)
def _torus_diag(n: int, d: int, q: int, p: int, i: int) -> np.ndarray:
    out = []
    for m in monomial_basis(n, d):
        v = 1
        for a in m:
            v = v * _sum_pow(a - i, q, p, False) % p
            if not v:
                break
        out.append(v)
    return np.array(out, dtype=np.int64)


@functools.lru_cache(maxsize=256)
def _root_sum(n: int, d: int, q: int, p: int, i: int, j: int) -> sp.csr_matrix:
    """sum_{s in F_q} of x_i -> x_i + s x_j on Sym^d."""
    basis = monomial_basis(n, d)
    idx = monomial_index(n, d)
    rows, cols, vals = [], [], []
    for r, m in enumerate(basis):
        ai = m[i]
        for u in range(ai):
            e = ai - u
            w = _sum_pow(e, q, p, True)
            if not w:
                continue
            b = binom_mod_p(ai, u, p)
            if not b:
                continue
            t = list(m)
            t[i] = u
            t[j] += e
            rows.append(r)
            cols.append(idx[tuple(t)])
            vals.append(b * w % p)
    N = len(basis)
    return sp.csr_matrix((vals, (rows, cols)), shape=(N, N), dtype=np.int64)


@functools.lru_cache(maxsize=64)
def _weyl_sum(n: int, d: int, p: int, i: int) -> sp.csr_matrix:
    """sum_sigma sgn(sigma)^(1+i) sigma on Sym^d."""
    basis = monomial_basis(n, d)
    idx = monomial_index(n, d)
    N = len(basis)
    acc = sp.csr_matrix((N, N), dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        sign = permutation_sign(perm) ** (1 + i)
        cols = []
        for m in basis:
            t = [0] * n
            for a, b in enumerate(perm):
                t[b] = m[a]
            cols.append(idx[tuple(t)])
        P = sp.csr_matrix((np.full(N, sign % p), (np.arange(N), cols)), shape=(N, N), dtype=np.int64)
        acc = acc + P
    acc.data %= p
    acc.eliminate_zeros()
    return acc


def _to_planes(F: FieldSpec, a: np.ndarray) -> list[np.ndarray]:
    a = a.astype(np.int64)
    return [(a // F.p**k) % F.p for k in range(F.s)]


def _from_planes(F: FieldSpec, planes: list[np.ndarray]) -> np.ndarray:
    out = np.zeros_like(planes[0])
    for k, pl in enumerate(planes):
        out += pl * F.p**k
    return out.astype(np.uint8)


def steinberg_apply(rows: np.ndarray, n: int, d: int, q, i: int = 0) -> np.ndarray:
    """rows . st_n^(i) on Sym^d via the factorized form (rows are packed F_q vectors)."""
    F = as_field(q)
    p = F.p
    c = steinberg_scalar(n, F)  # lies in F_p, packed value equals its residue
    diag = _torus_diag(n, d, F.q, p, i % (F.q - 1))
    ops = [_root_sum(n, d, F.q, p, a, b) for a in range(n) for b in range(a + 1, n)]
    W = _weyl_sum(n, d, p, i % (F.q - 1))
    out = []
    for v in _to_planes(F, np.atleast_2d(rows)):
        v = v * diag[None, :] % p
        for X in ops:
            v = np.asarray((X.T @ v.T).T) % p
        v = np.asarray((W.T @ v.T).T) % p
        out.append(v * c % p)
    return _from_planes(F, out)


def _action_factorized(a: GroupAlgElem, carrier: DegreeCarrier) -> np.ndarray:
    _, n, q, i = a.structure
    img = steinberg_apply(carrier.reps(), n, carrier.d, q, i)
    return carrier.project(img)


def action_matrix(a: GroupAlgElem, carrier: DegreeCarrier, method: str = "auto") -> MatrixGF:
    """Matrix of v -> v . a on the carrier's basis."""
    if a.spec != carrier.spec or a.n != carrier.n:
        raise UsageError("group algebra element and carrier disagree on field or rank")
    if carrier.ambient > LIMITS.max_dim:
        raise ResourceError(f"carrier ambient dimension {carrier.ambient} exceeds max_dim")
    if carrier.dim == 0:
        return MatrixGF(a.spec, np.zeros((0, 0), dtype=np.uint8))
    if method not in ("auto", "generic", "factorized"):
        raise UsageError(f"unknown method {method!r}")
    use_fact = method == "factorized" or (method == "auto" and a.structure is not None)
    if use_fact:
        if a.structure is None:
            raise UsageError("factorized action needs a Steinberg idempotent")
        m = _action_factorized(a, carrier)
    else:
        m = _action_generic(a, carrier)
    return MatrixGF(a.spec, m)


def _ga_check_feasible(a: GroupAlgElem) -> bool:
    return len(a) ** 2 <= 250_000


def summand_dims(a: GroupAlgElem, carriers, method: str = "auto") -> list[int]:
    """Rank of the action on each carrier; ``a`` must be idempotent."""
    if _ga_check_feasible(a) and not a.is_idempotent():
        raise DomainError("element is not idempotent")
    dims = []
    for car in carriers:
        M = action_matrix(a, car, method)
        if M.rows and not (M @ M == M):
            raise DomainError(f"element does not act idempotently in degree {car.d}")
        dims.append(M.rank() if M.rows else 0)
    return dims
