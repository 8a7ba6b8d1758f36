"""Graded ideals of Sym, the quotients R(V*, k) and Sym/I (affine), and the
structural checks on them.

Everything is degreewise linear algebra in monomial coordinates: the degree
m part of an ideal is the echelon span of ``x_l * I^(m-1)`` together with
the generators of degree m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .errors import DomainError, UsageError
from .field import FieldSpec, as_field
from .grouprep import DegreeCarrier, _shift_maps, action_matrix, twisted_idempotent
from .invariants import (
    coordinate_subspace,
    dickson_L,
    full_space,
    hyperplane_functionals,
    lines_of,
    mui_V,
    normalize,
    product_of_lines,
    projective_points,
    v_by_functional,
)
from .linalg import EchelonAccumulator, Subspace, intersect, rank, span
from .poly import GLElement, Polynomial, monomial_basis, sym_dim
from .simplicial import affine_chart, affine_hyperplane_functionals
from .steenrod import _p_monomial, chi_p, hit_space, is_hit, quot_dim, steenrod_p


class GradedIdeal:
    """Homogeneous ideal of F_q[x_1..x_n] with lazily computed degree pieces."""

    def __init__(self, field, n: int, generators: Sequence[Polynomial], name: str = ""):
        self.spec = as_field(field)
        self.n = n
        self.name = name
        gens = []
        for g in generators:
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise UsageError("generators must be homogeneous")
            if g.n != n or g.field != self.spec:
                raise UsageError("generator lives in a different ring")
            gens.append(g)
        self.generators = tuple(gens)
        self._pieces: dict[int, Subspace] = {}

    @property
    def min_degree(self) -> int:
        return min((g.degree() for g in self.generators), default=0)

    def degree_space(self, m: int) -> Subspace:
        if m in self._pieces:
            return self._pieces[m]
        N = sym_dim(self.n, m)
        if m < 0 or not self.generators or m < self.min_degree:
            sub = Subspace.zero(self.spec, N)
        else:
            acc = EchelonAccumulator(self.spec, N)
            own = [g.to_vector(m) for g in self.generators if g.degree() == m]
            if own:
                acc.add(np.array(own))
            if m > self.min_degree:
                prev = self.degree_space(m - 1)
                if prev.dim:
                    shift = _shift_maps(self.n, m)
                    for l in range(self.n):
                        rows = np.zeros((prev.dim, N), dtype=np.uint8)
                        rows[:, shift[l]] = prev.basis
                        acc.add(rows)
            sub = acc.subspace()
        self._pieces[m] = sub
        return sub

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return all(
            self.degree_space(d).contains(f.homogeneous_part(d).to_vector(d)) for d in {sum(m) for m in f.terms}
        )

    def plus(self, extra: Sequence[Polynomial], name: str = "") -> GradedIdeal:
        return GradedIdeal(self.spec, self.n, list(self.generators) + list(extra), name)

    def same_in_degrees(self, other: GradedIdeal, degrees) -> bool:
        return all(self.degree_space(m) == other.degree_space(m) for m in degrees)


@dataclass
class QuotientRing:
    ideal: GradedIdeal
    top_degree: int
    label: str = ""

    @property
    def spec(self) -> FieldSpec:
        return self.ideal.spec

    @property
    def n(self) -> int:
        return self.ideal.n

    def dim(self, m: int) -> int:
        return sym_dim(self.n, m) - self.ideal.degree_space(m).dim

    def carrier(self, m: int) -> DegreeCarrier:
        return DegreeCarrier(self.spec, self.n, m, self.ideal.degree_space(m))

    def coords(self, f: Polynomial, m: int) -> np.ndarray:
        return self.ideal.degree_space(m).coset_coords(f.to_vector(m))[0]

    def is_zero(self, f: Polynomial) -> bool:
        return self.ideal.contains(f)

    def rep_monomials(self, m: int) -> list[tuple[int, ...]]:
        basis = monomial_basis(self.n, m)
        return [basis[j] for j in self.ideal.degree_space(m).nonpivots]


# --- the ideals --------------------------------------------------------------


def top_degree(n: int, q: int, k: int) -> int:
    return k * (q**n - 1) // (q - 1) - n


def hyperplane_generators(W: Subspace, power: int) -> list[Polynomial]:
    """V_{H,W}^power for every hyperplane H of W."""
    return [v_by_functional(W, c) ** power for c in hyperplane_functionals(W)]


def ideal_I(n: int, q, k: int) -> GradedIdeal:
    F = as_field(q)
    if n < 1 or k < 1:
        raise UsageError("need n >= 1 and k >= 1")
    return GradedIdeal(F, n, hyperplane_generators(full_space(n, F), k), f"I({n},{F.q},{k})")


def ring_R(n: int, q, k: int) -> QuotientRing:
    F = as_field(q)
    return QuotientRing(ideal_I(n, F, k), top_degree(n, F.q, k), f"R({n},{F.q},{k})")


def orbit_generators_match(n: int, q, k: int) -> bool:
    """{V_{H,V*}^k} equals the GL_n-orbit of V_n^k up to scalars."""
    from .grouprep import enumerate_gl

    F = as_field(q)
    xs = Polynomial.gens(F, n)
    vn = mui_V(xs[:-1], xs[-1]) ** k
    orbit = {_monic(vn.act(g)) for g in enumerate_gl(n, F)}
    gens = {_monic(g) for g in ideal_I(n, F, k).generators}
    return orbit == gens


def _monic(f: Polynomial) -> Polynomial:
    F = f.field
    lead = f.terms[f.leading_monomial()]
    return f.scale(F.inv(lead))


def hilbert_series(r: QuotientRing, up_to: int | None = None) -> list[int]:
    up_to = r.top_degree + 1 if up_to is None else up_to
    return [r.dim(m) for m in range(up_to + 1)]


def vanishes_above_top(r: QuotientRing) -> bool:
    """R^(d+1) = 0; the ring is generated in degree 1, so all higher degrees vanish too."""
    return r.dim(r.top_degree + 1) == 0


def quot_dim_R(r: QuotientRing, m: int) -> int:
    """dim R^m / (P^+ R)^m = dim Sym^m - dim(hit^m + I^m)."""
    if m < 0:
        return 0
    hit = hit_space(r.n, m, r.spec).subspace
    return sym_dim(r.n, m) - (hit + r.ideal.degree_space(m)).dim


def quot_agreement(r: QuotientRing) -> list[tuple[int, int, int]]:
    """(m, dim Quot^m Sym, dim Quot^m R) for 0 <= m <= d."""
    return [(m, quot_dim(r.n, m, r.spec), quot_dim_R(r, m)) for m in range(r.top_degree + 1)]


# --- P-module structure ------------------------------------------------------


def _monomial_poly(F: FieldSpec, m) -> Polynomial:
    return Polynomial.monomial(F, m)


def p_stable(ideal: GradedIdeal, up_to: int) -> bool:
    """P^(p^a)(g) lies in the ideal for every generator g, up to degree ``up_to``."""
    F = ideal.spec
    for g in ideal.generators:
        a = 1
        while g.degree() + a * (F.q - 1) <= up_to:
            if not ideal.contains(steenrod_p(a, g)):
                return False
            a *= F.p
    return True


def top_indecomposable_check(r: QuotientRing) -> tuple[bool, bool]:
    """(a) P^i(R^(d-i(q-1))) = 0 in R^d for all i >= 1;
    (b) chi(P^i)(u) = 0 in R for coset representatives u with |u| + q i > d."""
    F, d, q = r.spec, r.top_degree, r.spec.q
    ok_a = True
    i = 1
    while i * (q - 1) <= d and ok_a:
        for m in r.rep_monomials(d - i * (q - 1)):
            if not r.is_zero(steenrod_p(i, _monomial_poly(F, m))):
                ok_a = False
                break
        i += 1
    ok_b = True
    for e in range(d + 1):
        reps = r.rep_monomials(e)
        if not reps:
            continue
        i = 1
        while e + (q - 1) * i <= d and ok_b:
            if e + q * i > d:
                for m in reps:
                    if not r.is_zero(chi_p(i, _monomial_poly(F, m))):
                        ok_b = False
                        break
            i += 1
    return ok_a, ok_b


def frames(n: int, F: FieldSpec) -> list[tuple[tuple[int, ...], ...]]:
    """Unordered n-frames: sets of n lines spanning F_q^n."""
    lines = projective_points(n, F)
    return [c for c in itertools.combinations(lines, n) if rank(F, list(c)) == n]


def top_spanning_check(r: QuotientRing, k: int) -> bool:
    """{L^k / (u_1 ... u_n) : frames} spans R^d."""
    F, n, d = r.spec, r.n, r.top_degree
    lines = projective_points(n, F)
    forms = {l: Polynomial.linear_form(F, l) for l in lines}
    powk = {l: forms[l] ** k for l in lines}
    powk1 = {l: forms[l] ** (k - 1) for l in lines}
    rows = []
    for fr in frames(n, F):
        fs = set(fr)
        rest = [powk[l] for l in lines if l not in fs]
        f = _prod(rest, F, n) * _prod((powk1[l] for l in fr), F, n)
        rows.append(r.coords(f, d))
    target = r.dim(d)
    if target == 0:
        return True
    return rank(F, np.array(rows)) == target


def _prod(polys, F, n) -> Polynomial:
    out = Polynomial.one(F, n)
    for p in polys:
        out = out * p
    return out


def gamma(n: int, q, k: int) -> Polynomial:
    """L_n^k / (x_1 ... x_n)."""
    F = as_field(q)
    L = dickson_L(n, F) ** k
    terms = {}
    for m, c in L.terms.items():
        if min(m) < 1:
            raise DomainError("L_n^k not divisible by x_1...x_n")  # cannot happen
        terms[tuple(a - 1 for a in m)] = c
    return Polynomial(F, n, terms)


def gamma_fixed_check(n: int, q, k: int, r: QuotientRing | None = None) -> bool:
    """gamma . st_n^(k-1) = gamma in R(V*,k)^d."""
    F = as_field(q)
    r = r or ring_R(n, F, k)
    d = r.top_degree
    car = r.carrier(d)
    st = twisted_idempotent(n, F, (k - 1) % (F.q - 1))
    M = action_matrix(st, car)
    v = r.coords(gamma(n, F, k), d)
    if not v.any():
        return False
    return bool(np.array_equal(F.matmul(v[None, :], M.entries)[0], v))


def mechanism_check(n: int, q, k: int) -> bool:
    """f . V_n^k is hit for every monomial f of degree <= d - k q^(n-1)."""
    F = as_field(q)
    xs = Polynomial.gens(F, n)
    vk = mui_V(xs[:-1], xs[-1]) ** k
    bound = top_degree(n, F.q, k) - k * F.q ** (n - 1)
    for e in range(bound + 1):
        for m in monomial_basis(n, e):
            if not is_hit(vk.mul_monomial(m)):
                return False
    return True


# --- Lemma 4.5 and the embedding ---------------------------------------------


def complement_of(y: Sequence[int], F: FieldSpec) -> Subspace:
    """span of e_j, j != pivot(y)."""
    n = len(y)
    piv = next(i for i, c in enumerate(y) if c)
    return coordinate_subspace(n, F, [j for j in range(n) if j != piv])


def ideal_rel_check(n: int, q, k: int, y: Sequence[int]) -> bool:
    """I(V*,k) + (y^k) = I(W, qk) + (y^k) in degrees 0..d+1."""
    F = as_field(q)
    y = [int(c) for c in y]
    if not any(y):
        raise DomainError("y must be nonzero")
    if len(y) != n:
        raise UsageError("y has the wrong length")
    yk = Polynomial.linear_form(F, y) ** k
    W = complement_of(y, F)
    lhs = ideal_I(n, F, k).plus([yk])
    rhs = GradedIdeal(F, n, hyperplane_generators(W, F.q * k) + [yk])
    return lhs.same_in_degrees(rhs, range(top_degree(n, F.q, k) + 2))


def embedding_kernel_check(n: int, q, k: int) -> tuple[bool, bool]:
    """(cap_l (I + (u_l^k)) = I, cap_l (u_l^k) = (L^k)) degreewise."""
    F = as_field(q)
    I = ideal_I(n, F, k)
    d = top_degree(n, F.q, k)
    lines = projective_points(n, F)
    ukl = [Polynomial.linear_form(F, l) ** k for l in lines]
    plus = [I.plus([u]) for u in ukl]
    principal = [GradedIdeal(F, n, [u]) for u in ukl]
    Lk = GradedIdeal(F, n, [product_of_lines(lines_of(full_space(n, F))) ** k])
    ok1 = True
    for m in range(d + 2):
        cap = plus[0].degree_space(m)
        for J in plus[1:]:
            cap = intersect(cap, J.degree_space(m))
        if cap != I.degree_space(m):
            ok1 = False
            break
    ok2 = True
    top = k * len(lines) + 1
    for m in range(top + 1):
        cap = principal[0].degree_space(m)
        for J in principal[1:]:
            cap = intersect(cap, J.degree_space(m))
        if cap != Lk.degree_space(m):
            ok2 = False
            break
    return ok1, ok2


def spike_check(q, m: int, r: int) -> tuple[bool, bool]:
    """x^(q^m r - 1) is not hit: (binomial criterion over P^(p^a), linear algebra over all P^i)."""
    F = as_field(q)
    if not 1 <= r <= F.q - 1:
        raise UsageError("need 1 <= r <= q-1")
    top = F.q**m * r - 1
    binom_ok = True
    a = 1
    while a * (F.q - 1) <= top:
        src = top - a * (F.q - 1)
        if _p_monomial(a, (src,), F.q, F.p):
            binom_ok = False
        a *= F.p
    linalg_ok = quot_dim(1, top, F) == 1
    return binom_ok, linalg_ok


# --- the affine quotient -----------------------------------------------------


def affine_ideal(n: int, q) -> GradedIdeal:
    F = as_field(q)
    if n < 2:
        raise UsageError("need n >= 2")
    pts = affine_chart(n, F)
    forms = [Polynomial.linear_form(F, a) for a in pts]
    gens = []
    for c in affine_hyperplane_functionals(n, F):
        gens.append(_prod((f for a, f in zip(pts, forms) if _dot(F, c, a) != 0), F, n))
    return GradedIdeal(F, n, gens, f"Iaff({n},{F.q})")


def _dot(F, a, b) -> int:
    s = 0
    for x, y in zip(a, b):
        s = F.add(s, F.mul(x, y))
    return s


def affine_ring(n: int, q) -> QuotientRing:
    F = as_field(q)
    return QuotientRing(affine_ideal(n, F), F.q ** (n - 1) - n, f"Aff({n},{F.q})")


def cuspidal_target(n: int, q: int) -> int:
    return prod(q**i - 1 for i in range(1, n))


@dataclass
class CuspidalReport:
    n: int
    q: int
    degree: int
    dim_top: int
    quot_dim: int
    target: int
    quot_agree: bool
    vanishes_above: bool
    affine_rel: bool

    @property
    def ok(self) -> bool:
        return (
            self.dim_top == self.quot_dim == self.target
            and self.quot_agree
            and self.vanishes_above
            and self.affine_rel
        )


def affine_rel_check(n: int, q, r: QuotientRing | None = None) -> bool:
    """For each y in E: I + (y) = I(W, q-1) + (y), W = span(x_1..x_{n-1}), degrees 0..top+1."""
    F = as_field(q)
    r = r or affine_ring(n, F)
    W = coordinate_subspace(n, F, range(n - 1))
    base = hyperplane_generators(W, F.q - 1) if n > 1 else []
    for a in affine_chart(n, F):
        y = Polynomial.linear_form(F, a)
        lhs = r.ideal.plus([y])
        rhs = GradedIdeal(F, n, base + [y])
        if not lhs.same_in_degrees(rhs, range(r.top_degree + 2)):
            return False
    return True


def cuspidal_dim(n: int, q) -> CuspidalReport:
    F = as_field(q)
    r = affine_ring(n, F)
    d = r.top_degree
    agree = all(quot_dim(n, m, F) == quot_dim_R(r, m) for m in range(d + 1))
    return CuspidalReport(
        n,
        F.q,
        d,
        r.dim(d),
        quot_dim(n, d, F),
        cuspidal_target(n, F.q),
        agree,
        r.dim(d + 1) == 0,
        affine_rel_check(n, F, r),
    )
