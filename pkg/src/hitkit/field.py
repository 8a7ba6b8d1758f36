"""Finite fields F_q, q = p^s, with packed integer elements.

An element is stored as the integer ``c_0 + c_1 p + ... + c_{s-1} p^{s-1}``
where ``c_0 + c_1 t + ...`` is its residue modulo the fixed irreducible
polynomial.  Arithmetic goes through precomputed ``q x q`` tables so that
numpy and numba kernels can work on plain ``uint8`` arrays; the
:class:`FieldSpec` is the context object carrying those tables.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, UsageError

# monic moduli, constant coefficient first
BUILTIN_MODULI: dict[int, tuple[int, int, tuple[int, ...]]] = {
    2: (2, 1, (0, 1)),
    3: (3, 1, (0, 1)),
    4: (2, 2, (1, 1, 1)),  # t^2 + t + 1
    5: (5, 1, (0, 1)),
    7: (7, 1, (0, 1)),
    8: (2, 3, (1, 1, 0, 1)),  # t^3 + t + 1
    9: (3, 2, (1, 0, 1)),  # t^2 + 1
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _polymod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[i + shift] = (a[i + shift] - c * mc) % p
        a.pop()
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    s = len(modulus) - 1
    if s < 1 or modulus[-1] % p == 0:
        return False
    for deg in range(1, s // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = tuple(low) + (1,)
            if not any(_polymod(list(modulus), div, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """F_q presented as F_p[t]/(modulus)."""

    p: int
    s: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise UsageError(f"p={self.p} is not prime")
        if self.s < 1 or len(self.modulus) != self.s + 1 or self.modulus[-1] != 1:
            raise UsageError("modulus must be monic of degree s")
        if self.q > 256:
            raise UsageError("fields larger than 256 elements are not supported")
        if self.s > 1 and not is_irreducible(self.modulus, self.p):
            raise UsageError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def is_prime(self) -> bool:
        return self.s == 1

    def __repr__(self) -> str:
        return f"F_{self.q}"

    # --- packed <-> coefficient lists -------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.s):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def pack(self, coeffs) -> int:
        coeffs = _polymod(list(coeffs), self.modulus, self.p) if len(coeffs) > self.s else coeffs
        v = 0
        for c in reversed(list(coeffs) + [0] * (self.s - len(coeffs))):
            v = v * self.p + (c % self.p)
        return v

    # --- tables ------------------------------------------------------------

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            ca = self.coeffs(a)
            for b in range(a, q):
                cb = self.coeffs(b)
                prod = [0] * (2 * self.s - 1)
                for i, x in enumerate(ca):
                    if x:
                        for j, y in enumerate(cb):
                            prod[i + j] += x * y
                r = self.pack(_polymod(prod, self.modulus, self.p))
                t[a, b] = t[b, a] = r
        t.setflags(write=False)
        return t

    @cached_property
    def add_table(self) -> np.ndarray:
        q, p = self.q, self.p
        t = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            ca = self.coeffs(a)
            for b in range(q):
                cb = self.coeffs(b)
                t[a, b] = self.pack([(x + y) % p for x, y in zip(ca, cb)])
        t.setflags(write=False)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        t = np.array([self.pack([-c for c in self.coeffs(a)]) for a in range(self.q)], dtype=np.uint8)
        t.setflags(write=False)
        return t

    @cached_property
    def sub_table(self) -> np.ndarray:
        t = self.add_table[:, self.neg_table]
        t.setflags(write=False)
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.q, dtype=np.uint8)
        mt = self.mul_table
        for a in range(1, self.q):
            t[a] = int(np.nonzero(mt[a] == 1)[0][0])
        t.setflags(write=False)
        return t

    # --- scalar arithmetic on packed ints ------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, m: int) -> int:
        """Image of an integer under Z -> F_p."""
        return m % self.p

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self) -> list[int]:
        return list(range(self.q))

    def format(self, a: int) -> str:
        if self.s == 1:
            return str(a)
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs(a)))):
            if c == 0:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mon:
                parts.append(str(c))
            else:
                parts.append(mon if c == 1 else f"{c}{mon}")
        return "+".join(parts) if parts else "0"

    # --- vectorised helpers --------------------------------------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of packed matrices."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape[-1] != b.shape[0]:
            raise UsageError("inner dimensions differ")
        if self.is_prime:
            k = a.shape[-1]
            if k * (self.p - 1) ** 2 < 2**24:  # float32 sums stay exact
                out = a.astype(np.float32) @ b.astype(np.float32)
                return np.mod(out, self.p).astype(np.uint8)
            if k * (self.p - 1) ** 2 < 2**52:
                out = a.astype(np.float64) @ b.astype(np.float64)
                return np.mod(out, self.p).astype(np.uint8)
            out = a.astype(np.int64) @ b.astype(np.int64)
            return np.mod(out, self.p).astype(np.uint8)
        out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.uint8)
        mt, at = self.mul_table, self.add_table
        for j in range(a.shape[-1]):
            out = at[out, mt[a[..., j, None], b[j]]]
        return out

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_table[a, b]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.sub_table[a, b]

    def vscale(self, c: int, a: np.ndarray) -> np.ndarray:
        return self.mul_table[c][a]


@functools.lru_cache(maxsize=None)
def get_field(q: int) -> FieldSpec:
    """Built-in field of order q (2, 3, 4, 5, 7, 8, 9)."""
    if q not in BUILTIN_MODULI:
        raise UsageError(f"no built-in modulus for q={q}; construct FieldSpec explicitly")
    p, s, m = BUILTIN_MODULI[q]
    return FieldSpec(p, s, m)


def as_field(field) -> FieldSpec:
    return field if isinstance(field, FieldSpec) else get_field(int(field))


@dataclass(frozen=True)
class FieldElem:
    """A field element bundled with its field, for scalar-level use."""

    spec: FieldSpec
    value: int

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, coeffs) -> FieldElem:
        return cls(spec, spec.pack(coeffs))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise UsageError(f"mixed fields {self.spec} and {other.spec}")
            return other.value
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.spec, self.spec.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.spec, self.spec.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.spec, self.spec.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.spec, self.spec.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.spec, self.spec.pow(self.value, e))

    def __truediv__(self, other):
        return self * FieldElem(self.spec, self._other(other)).inverse()

    def inverse(self) -> FieldElem:
        return FieldElem(self.spec, self.spec.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return self.spec.format(self.value)


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown op {op!r}")


def inverse(a: FieldElem) -> FieldElem:
    return a.inverse()


def integer_in_field(m: int, spec: FieldSpec) -> FieldElem:
    return FieldElem(spec, spec.from_int(m))


def enumerate_field(spec: FieldSpec) -> list[FieldElem]:
    """All q elements, zero first, lexicographic on (c_{s-1}, ..., c_0)."""
    return [FieldElem(spec, v) for v in range(spec.q)]
