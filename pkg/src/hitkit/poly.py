"""Multivariate polynomials over F_q with the right GL_n action.

Monomials are exponent tuples.  Within a degree they are ordered
lexicographically with x1 most significant, largest first; across degrees the
order is graded.  ``monomial_basis(n, d)`` fixes the coordinate order used by
every per-degree rank computation.

The right action of a matrix g is ``x_i . g = sum_j g[i, j] x_j``, extended
multiplicatively, so that ``(f . g) . h = f . (g h)``.
"""

from __future__ import annotations

import functools
import itertools
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, UsageError
from .field import FieldSpec, as_field

Monomial = tuple


@functools.lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree d in n variables, lex-descending."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomial_basis(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, d))}


@functools.lru_cache(maxsize=None)
def monomial_array(n: int, d: int) -> np.ndarray:
    a = np.array(monomial_basis(n, d), dtype=np.int64).reshape(-1, n)
    a.setflags(write=False)
    return a


def sym_dim(n: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(d + n - 1, n - 1) if n > 0 else int(d == 0)


def monomial_key(m: Monomial):
    """Sort key for graded-lex order (ascending)."""
    return (sum(m), m)


def _madd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Sparse polynomial: mapping exponent tuple -> nonzero packed coefficient."""

    __slots__ = ("field", "n", "terms", "_hash")

    def __init__(self, field, n: int, terms: Mapping[Monomial, int] | None = None):
        self.field: FieldSpec = as_field(field)
        self.n = n
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if len(m) != n:
                        raise UsageError(f"monomial {m} has wrong length for n={n}")
                    t[tuple(m)] = int(c)
        self.terms: dict[Monomial, int] = t
        self._hash = None

    # --- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, field, n: int) -> Polynomial:
        return cls(field, n)

    @classmethod
    def const(cls, field, n: int, c: int = 1) -> Polynomial:
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def one(cls, field, n: int) -> Polynomial:
        return cls.const(field, n, 1)

    @classmethod
    def var(cls, field, n: int, i: int) -> Polynomial:
        e = [0] * n
        e[i] = 1
        return cls(field, n, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, exps: Sequence[int], c: int = 1) -> Polynomial:
        return cls(field, len(exps), {tuple(exps): c})

    @classmethod
    def linear_form(cls, field, coeffs: Sequence[int]) -> Polynomial:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = int(c)
        return cls(field, n, terms)

    @classmethod
    def gens(cls, field, n: int) -> list[Polynomial]:
        return [cls.var(field, n, i) for i in range(n)]

    # --- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.field, self.n, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, cap: int) -> Polynomial:
        return Polynomial(self.field, self.n, {m: c for m, c in self.terms.items() if sum(m) <= cap})

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise DomainError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_key)

    # --- arithmetic ------------------------------------------------------------

    def _compat(self, other: Polynomial):
        if other.n != self.n:
            raise UsageError(f"variable counts differ ({self.n} vs {other.n})")
        if other.field != self.field:
            raise UsageError("polynomials over different fields")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._compat(other)
            return other
        if isinstance(other, int):
            return Polynomial.const(self.field, self.n, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(t.get(m, 0), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(F, self.n, t)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        F = self.field
        return Polynomial(F, self.n, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> Polynomial:
        """Multiply by a packed field element."""
        if c == 0:
            return Polynomial(self.field, self.n)
        row = self.field.mul_table[c]
        return Polynomial(self.field, self.n, {m: int(row[v]) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        mt, at = F.mul_table, F.add_table
        t: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            row = mt[c1]
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                t[m] = int(at[t.get(m, 0), row[c2]])
        return Polynomial(F, self.n, t)

    __rmul__ = __mul__

    def mul_monomial(self, m: Monomial) -> Polynomial:
        return Polynomial(self.field, self.n, {_madd(k, m): c for k, c in self.terms.items()})

    def frobenius(self, times: int = 1) -> Polynomial:
        """f -> f^(p^times), computed coefficientwise."""
        F = self.field
        e = F.p**times
        return Polynomial(F, self.n, {tuple(a * e for a in m): F.pow(c, e) for m, c in self.terms.items()})

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise DomainError("negative power")
        p = self.field.p
        result = Polynomial.one(self.field, self.n)
        k = 0
        while e:
            e, digit = divmod(e, p)
            if digit:
                piece = self
                for _ in range(digit - 1):
                    piece = piece * self
                result = result * (piece.frobenius(k) if k else piece)
            k += 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(self.field, self.n, self.field.from_int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.n, frozenset(self.terms.items())))
        return self._hash

    # --- substitution ----------------------------------------------------------

    def substitute(self, forms: Sequence[Polynomial]) -> Polynomial:
        """Replace x_i by forms[i]; all forms share a variable count."""
        if len(forms) != self.n:
            raise UsageError(f"need {self.n} substitution forms, got {len(forms)}")
        if not forms:
            return self
        m_out = forms[0].n
        F = self.field
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in cache:
                cache[key] = forms[i] ** e
            return cache[key]

        acc = Polynomial(F, m_out)
        for m, c in self.terms.items():
            term = Polynomial.const(F, m_out, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def act(self, g: GLElement) -> Polynomial:
        """Right action f . g."""
        if g.n != self.n:
            raise UsageError("matrix size differs from variable count")
        return self.substitute(g.row_forms())

    def embed(self, n_new: int, positions: Sequence[int]) -> Polynomial:
        """Move variable i to position positions[i] in an n_new-variable ring."""
        t = {}
        for m, c in self.terms.items():
            e = [0] * n_new
            for i, a in enumerate(m):
                e[positions[i]] += a
            t[tuple(e)] = c
        return Polynomial(self.field, n_new, t)

    # --- coordinates -----------------------------------------------------------

    def to_vector(self, d: int) -> np.ndarray:
        idx = monomial_index(self.n, d)
        v = np.zeros(len(idx), dtype=np.uint8)
        for m, c in self.terms.items():
            j = idx.get(m)
            if j is None:
                raise UsageError(f"term {m} is not of degree {d}")
            v[j] = c
        return v

    @classmethod
    def from_vector(cls, field, row, n: int, d: int) -> Polynomial:
        basis = monomial_basis(n, d)
        row = np.asarray(row)
        if row.shape[-1] != len(basis):
            raise UsageError("vector length does not match the monomial basis")
        return cls(field, n, {basis[j]: int(row[j]) for j in np.flatnonzero(row)})

    # --- rendering -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        F = self.field
        for m, c in self.sorted_terms():
            factors = []
            for i, a in enumerate(m):
                if a == 1:
                    factors.append(f"x{i + 1}")
                elif a > 1:
                    factors.append(f"x{i + 1}^{a}")
            cs = F.format(c)
            if F.s > 1 and "+" in cs:
                cs = f"({cs})"
            if not factors:
                parts.append(cs)
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def substitute(f: Polynomial, g: GLElement) -> Polynomial:
    return f.act(g)


def to_vector(f: Polynomial, d: int) -> np.ndarray:
    return f.to_vector(d)


def from_vector(field, row, n: int, d: int) -> Polynomial:
    return Polynomial.from_vector(field, row, n, d)


def product(polys: Iterable[Polynomial], field, n: int) -> Polynomial:
    out = Polynomial.one(field, n)
    for f in polys:
        out = out * f
    return out


def proportional(f: Polynomial, g: Polynomial) -> bool:
    """True iff f = c g for a nonzero scalar c (both zero counts as True)."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if f.terms.keys() != g.terms.keys():
        return False
    F = f.field
    m = next(iter(f.terms))
    c = F.mul(f.terms[m], F.inv(g.terms[m]))
    return f == g.scale(c)


# --- GL_n elements -----------------------------------------------------------


def _det(F: FieldSpec, rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        det = F.mul(det, a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            if a[r][c]:
                f = F.mul(a[r][c], inv)
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
    return det


class GLElement:
    """Invertible n x n matrix over F_q, stored row-major as a tuple."""

    __slots__ = ("field", "n", "entries", "_det", "_hash")

    def __init__(self, field, rows, check: bool = True):
        self.field = as_field(field)
        rows = [list(map(int, r)) for r in rows]
        self.n = len(rows)
        self.entries = tuple(v for r in rows for v in r)
        self._det = _det(self.field, rows)
        self._hash = hash((self.n, self.entries))
        if check and self._det == 0:
            raise DomainError("matrix is singular")

    @classmethod
    def identity(cls, field, n: int) -> GLElement:
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], check=False)

    @classmethod
    def _raw(cls, field, n: int, entries: tuple[int, ...], det: int) -> GLElement:
        g = cls.__new__(cls)
        g.field, g.n, g.entries, g._det = field, n, entries, det
        g._hash = hash((n, entries))
        return g

    def rows(self) -> list[tuple[int, ...]]:
        n = self.n
        return [self.entries[i * n:(i + 1) * n] for i in range(n)]

    def row_forms(self) -> list[Polynomial]:
        return [Polynomial.linear_form(self.field, r) for r in self.rows()]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.uint8).reshape(self.n, self.n)

    def det(self) -> int:
        return self._det

    def __matmul__(self, other: GLElement) -> GLElement:
        F, n = self.field, self.n
        mt, at = F.mul_table, F.add_table
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            for j in range(n):
                s = 0
                for k in range(n):
                    s = at[s, mt[a[i * n + k], b[k * n + j]]]
                out.append(int(s))
        return GLElement._raw(F, n, tuple(out), F.mul(self._det, other._det))

    def inverse(self) -> GLElement:
        F, n = self.field, self.n
        a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows())]
        for c in range(n):
            piv = next(r for r in range(c, n) if a[r][c])
            a[c], a[piv] = a[piv], a[c]
            inv = F.inv(a[c][c])
            a[c] = [F.mul(inv, x) for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
        return GLElement(F, [row[n:] for row in a], check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, GLElement) and self.n == other.n and self.entries == other.entries and self.field == other.field

    def __hash__(self):
        return self._hash

    def __lt__(self, other: GLElement) -> bool:
        return self.entries < other.entries

    def __repr__(self) -> str:
        return f"GLElement({self.rows()})"


def permutation_matrix(field, perm: Sequence[int]) -> GLElement:
    """Matrix with a 1 at (i, perm[i]); acts by x_i -> x_{perm[i]}."""
    n = len(perm)
    return GLElement(field, [[int(perm[i] == j) for j in range(n)] for i in range(n)], check=False)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))
