"""Dickson, Mui and line-product invariants, and the identities relating them
to the antipode of the Steenrod algebra.

Linear forms are coefficient vectors in F_q^n (packed entries); a subspace of
V* is a :class:`~hitkit.linalg.Subspace` of F_q^n.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import cache
from .errors import DomainError, UsageError
from .field import FieldSpec, as_field
from .linalg import Subspace, span
from .poly import Polynomial, permutation_sign, product, proportional
from .steenrod import chi_p


def normalize(F: FieldSpec, v) -> tuple[int, ...]:
    """Scale v so its first nonzero coordinate is 1."""
    v = [int(c) for c in v]
    lead = next((c for c in v if c), 0)
    if lead == 0:
        raise DomainError("zero vector has no line")
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in v)


@functools.lru_cache(maxsize=None)
def projective_points(n: int, F: FieldSpec) -> tuple[tuple[int, ...], ...]:
    """Normalized nonzero vectors of F_q^n, i.e. the lines, in lex order."""
    pts = [v for v in itertools.product(range(F.q), repeat=n) if any(v) and next(c for c in v if c) == 1]
    return tuple(sorted(pts))


def vectors_of(W: Subspace) -> list[tuple[int, ...]]:
    F = W.spec
    out = []
    for coeffs in itertools.product(range(F.q), repeat=W.dim):
        v = np.zeros(W.ambient_dim, dtype=np.uint8)
        for c, row in zip(coeffs, W.basis):
            if c:
                v = F.vadd(v, F.vscale(c, row))
        out.append(tuple(int(a) for a in v))
    return out


@functools.lru_cache(maxsize=None)
def subspaces(n: int, k: int, F: FieldSpec) -> tuple[Subspace, ...]:
    """All k-dimensional subspaces of F_q^n, as RREF bases, in lex order of pivots/entries."""
    memo = cache.table("subspaces")
    key = (n, k, F.q)
    if key in memo:
        return tuple(Subspace(F, n, b, piv) for piv, b in memo[key])
    out = []
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(n) if c > pivots[r] and c not in pivots]
        for vals in itertools.product(range(F.q), repeat=len(free)):
            b = np.zeros((k, n), dtype=np.uint8)
            for r, c in enumerate(pivots):
                b[r, c] = 1
            for (r, c), v in zip(free, vals):
                b[r, c] = v
            out.append(Subspace(F, n, b, pivots))
    memo[key] = [(W.pivots, np.array(W.basis)) for W in out]
    cache.mark_dirty("subspaces")
    return tuple(out)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class LineSet:
    """Lines of a subspace W of V*, each with a normalized representative."""

    ambient: Subspace
    reps: tuple[tuple[int, ...], ...]

    @property
    def spec(self) -> FieldSpec:
        return self.ambient.spec

    @property
    def n(self) -> int:
        return self.ambient.ambient_dim

    def forms(self) -> list[Polynomial]:
        return [Polynomial.linear_form(self.spec, r) for r in self.reps]


def lines_of(W: Subspace) -> LineSet:
    F = W.spec
    reps = sorted({normalize(F, v) for v in vectors_of(W) if any(v)})
    return LineSet(W, tuple(reps))


def full_space(n: int, field) -> Subspace:
    return Subspace.full(as_field(field), n)


def coordinate_subspace(n: int, field, indices) -> Subspace:
    F = as_field(field)
    rows = np.zeros((len(indices), n), dtype=np.uint8)
    for r, i in enumerate(indices):
        rows[r, i] = 1
    return span(F, rows, n)


def product_of_lines(ls: LineSet) -> Polynomial:
    return product(ls.forms(), ls.spec, ls.n)


def dickson_L(n: int, field) -> Polynomial:
    """det(x_j^(q^(i-1))) expanded by the Leibniz formula."""
    F = as_field(field)
    if n < 1:
        raise UsageError("n must be positive")
    xs = Polynomial.gens(F, n)
    pw = [[xs[j] ** (F.q**i) for j in range(n)] for i in range(n)]
    out = Polynomial.zero(F, n)
    for perm in itertools.permutations(range(n)):
        term = product((pw[i][perm[i]] for i in range(n)), F, n)
        out = out + (term if permutation_sign(perm) == 1 else -term)
    return out


def mui_V(prefix: list[Polynomial], z: Polynomial) -> Polynomial:
    """prod over (l_1..l_m) in F_q^m of (l_1 y_1 + ... + l_m y_m + z)."""
    F, n = z.field, z.n
    out = Polynomial.one(F, n)
    for lam in itertools.product(range(F.q), repeat=len(prefix)):
        form = z
        for c, y in zip(lam, prefix):
            if c:
                form = form + y.scale(c)
        out = out * form
    return out


def is_hyperplane_of(H: Subspace, W: Subspace) -> bool:
    return H.dim == W.dim - 1 and H <= W


def v_HW(H: Subspace, W: Subspace) -> Polynomial:
    """Product of the line representatives of W not lying in H."""
    if not is_hyperplane_of(H, W):
        raise DomainError("H is not a hyperplane of W")
    F = W.spec
    forms = [Polynomial.linear_form(F, r) for r in lines_of(W).reps if not H.contains(np.array(r))]
    return product(forms, F, W.ambient_dim)


def hyperplane_functionals(W: Subspace) -> list[tuple[int, ...]]:
    """Normalized functionals c (on F_q^n) whose kernels cut distinct hyperplanes of W."""
    F = W.spec
    seen = {}
    reps = lines_of(W).reps
    for c in projective_points(W.ambient_dim, F):
        # kernel restricted to W, identified by which lines it contains
        kern = tuple(i for i, r in enumerate(reps) if _dot(F, c, r) == 0)
        if len(kern) == len(reps):
            continue
        seen.setdefault(kern, c)
    return [seen[k] for k in sorted(seen)]


def _dot(F: FieldSpec, a, b) -> int:
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s = F.add(s, F.mul(x, y))
    return s


def v_by_functional(W: Subspace, c) -> Polynomial:
    """V_{H,W} for H = W ∩ ker(c)."""
    F = W.spec
    forms = [Polynomial.linear_form(F, r) for r in lines_of(W).reps if _dot(F, c, r) != 0]
    return product(forms, F, W.ambient_dim)


def elem_sym_qpow(i: int, xs: list[Polynomial]) -> Polynomial:
    """i-th elementary symmetric function of x_1^(q-1), ..., x_m^(q-1)."""
    if not xs:
        raise UsageError("need at least one variable")
    F, n = xs[0].field, xs[0].n
    if i < 0 or i > len(xs):
        raise UsageError("index out of range")
    pw = [x ** (F.q - 1) for x in xs]
    out = Polynomial.zero(F, n)
    for combo in itertools.combinations(pw, i):
        out = out + product(combo, F, n)
    return out


def lemma_vn_sides(
    q: int, s: int, r: int, n: int, y_forms: list[Polynomial] | None = None, sign: str = "derived"
):
    """Both sides of the V-product / antipode identity.

    Variables: x_1..x_{n-1} then fresh y_1..y_r unless ``y_forms`` is given
    (forms in n - 1 + r variables).

    ``sign="derived"`` uses (-1)^top with top the largest operation index,
    which is what expanding the total operation P-hat produces; for odd q this
    is (-1)^(r(n-1)).  ``sign="literal"`` uses (-1)^(n-1), which agrees unless
    q is odd, r is even and n is even.
    """
    if sign not in ("derived", "literal"):
        raise UsageError(f"unknown sign convention {sign!r}")
    F = as_field(q)
    q = F.q
    if not 1 <= r <= q - 1:
        raise UsageError(f"r={r} outside 1..q-1")
    if n < 1 or s < 0:
        raise UsageError("need n >= 1 and s >= 0")
    nv = n - 1 + r
    if y_forms is None:
        y_forms = [Polynomial.var(F, nv, n - 1 + j) for j in range(r)]
    elif len(y_forms) != r:
        raise UsageError("need r forms")
    else:
        nv = y_forms[0].n
    xs = [Polynomial.var(F, nv, i) for i in range(n - 1)]
    qs = q**s
    lhs = product((mui_V(xs, y) ** qs for y in y_forms), F, nv)
    ypow = product((y**qs for y in y_forms), F, nv)
    top = (q ** (n - 1) - 1) * qs * r // (q - 1)
    rhs = Polynomial.zero(F, nv)
    for i in range(n):
        if top - i < 0:
            continue
        e = elem_sym_qpow(i, xs) if xs else Polynomial.one(F, nv)
        rhs = rhs + chi_p(top - i, e * ypow)
    if (top if sign == "derived" else n - 1) % 2:
        rhs = -rhs
    return lhs, rhs


def verify_lemma_vn(q: int, s: int, r: int, n: int, y_forms=None, sign: str = "derived") -> bool:
    lhs, rhs = lemma_vn_sides(q, s, r, n, y_forms, sign)
    return lhs == rhs


def dickson_Q(m: int, j: int, field) -> Polynomial:
    """Q_{m,j} by coefficient extraction from V(x_1..x_m, x) = sum (-1)^(m-j) Q_{m,j} x^(q^j)."""
    F = as_field(field)
    if not 0 <= j <= m:
        raise UsageError("need 0 <= j <= m")
    nv = m + 1
    xs = [Polynomial.var(F, nv, i) for i in range(m)]
    V = mui_V(xs, Polynomial.var(F, nv, m))
    target = F.q**j
    terms = {mon[:m]: c for mon, c in V.terms.items() if mon[m] == target}
    Q = Polynomial(F, m, terms)
    return -Q if (m - j) % 2 else Q


def dickson_Q_chi(m: int, j: int, field, simplified: bool = True) -> Polynomial:
    """sum_i chi(P^((q^m - q^j)/(q-1) - i))(e_i), i from m-j (or 0) to m."""
    F = as_field(field)
    q = F.q
    xs = Polynomial.gens(F, m)
    top = (q**m - q**j) // (q - 1)
    out = Polynomial.zero(F, m)
    for i in range(m - j if simplified else 0, m + 1):
        if top - i < 0:
            continue
        out = out + chi_p(top - i, elem_sym_qpow(i, xs))
    return out


def dickson_Q0_formula(m: int, field) -> Polynomial:
    F = as_field(field)
    q = F.q
    return chi_p((q**m - 1) // (q - 1) - m, elem_sym_qpow(m, Polynomial.gens(F, m)))


def lines_product_matches_dickson(n: int, field) -> bool:
    F = as_field(field)
    return proportional(product_of_lines(lines_of(full_space(n, F))), dickson_L(n, F))
