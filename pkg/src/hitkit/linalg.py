"""Exact dense linear algebra over F_q.

Matrices are ``uint8`` arrays of packed field elements (see :mod:`hitkit.field`).
Subspaces are stored by their reduced row echelon basis, which is unique,
so equality of subspaces is equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .config import check_dim
from .errors import DomainError, UsageError
from .field import FieldSpec, as_field


def as_rows(field: FieldSpec, rows, ncols: int | None = None) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, ncols or 0), dtype=np.int64)
    if a.size and (a.min() < 0 or a.max() >= field.q):
        a = np.mod(a, field.p) if field.is_prime else a
        if a.max() >= field.q:
            raise UsageError("entries are not packed field elements")
    return a.astype(np.uint8)


@dataclass(frozen=True)
class MatrixGF:
    """Dense matrix over a finite field; entries are packed elements."""

    spec: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        e = np.ascontiguousarray(self.entries, dtype=np.uint8)
        if e.ndim != 2:
            raise UsageError("MatrixGF entries must be two-dimensional")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_rows(cls, spec, rows, ncols: int | None = None) -> MatrixGF:
        spec = as_field(spec)
        return cls(spec, as_rows(spec, rows, ncols))

    @classmethod
    def identity(cls, spec, n: int) -> MatrixGF:
        return cls(as_field(spec), np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def transpose(self) -> MatrixGF:
        return MatrixGF(self.spec, self.entries.T)

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        if other.spec != self.spec:
            raise UsageError("mixed fields")
        return MatrixGF(self.spec, self.spec.matmul(self.entries, other.entries))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.spec == other.spec
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.spec, self.entries.shape, self.entries.tobytes()))

    def rank(self) -> int:
        return rref(self)[1]


def rref_array(spec: FieldSpec, a: np.ndarray, use_numba: bool | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Return (reduced copy with zero rows dropped, pivot columns)."""
    check_dim(*a.shape)
    m = np.array(a, dtype=np.uint8, copy=True, order="C")
    piv = _accel.rref_inplace(m, spec, use_numba)
    return m[: len(piv)].copy(), piv


def rref(m: MatrixGF) -> tuple[MatrixGF, int]:
    red, piv = rref_array(m.spec, m.entries)
    full = np.zeros_like(m.entries)
    full[: len(piv)] = red
    return MatrixGF(m.spec, full), len(piv)


def rank(spec, rows) -> int:
    spec = as_field(spec)
    a = as_rows(spec, rows)
    if a.size == 0:
        return 0
    return len(rref_array(spec, a)[1])


# --- GF(2) bitset path -------------------------------------------------------


def gf2_pack_rows(a: np.ndarray) -> list[int]:
    """Each 0/1 row becomes a Python int with bit j = column j."""
    weights = [1 << j for j in range(a.shape[1])]
    return [sum(w for w, b in zip(weights, row) if b) for row in np.asarray(a).tolist()]


def gf2_rank_bits(rows: Iterable[int]) -> int:
    """Rank of bit-packed GF(2) rows via an xor basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


# --- subspaces ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space held as an RREF basis with its pivot columns."""

    spec: FieldSpec
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def zero(cls, spec, ambient_dim: int) -> Subspace:
        return cls(as_field(spec), ambient_dim, np.zeros((0, ambient_dim), dtype=np.uint8), ())

    @classmethod
    def full(cls, spec, ambient_dim: int) -> Subspace:
        return cls(as_field(spec), ambient_dim, np.eye(ambient_dim, dtype=np.uint8), tuple(range(ambient_dim)))

    def matrix(self) -> MatrixGF:
        return MatrixGF(self.spec, self.basis)

    @property
    def nonpivots(self) -> np.ndarray:
        mask = np.ones(self.ambient_dim, dtype=bool)
        mask[list(self.pivots)] = False
        return np.flatnonzero(mask)

    def _check(self, other: Subspace):
        if other.spec != self.spec or other.ambient_dim != self.ambient_dim:
            raise UsageError("subspaces live in different ambient spaces")

    def reduce(self, vectors) -> np.ndarray:
        """Normal form of each row modulo this subspace (pivot entries become 0)."""
        v = as_rows(self.spec, vectors, self.ambient_dim)
        if self.dim == 0 or v.shape[0] == 0:
            return v.copy()
        coef = v[:, list(self.pivots)]
        return self.spec.vsub(v, self.spec.matmul(coef, self.basis))

    def coset_coords(self, vectors) -> np.ndarray:
        """Coordinates in the quotient, indexed by the non-pivot columns."""
        return self.reduce(vectors)[:, self.nonpivots]

    def contains(self, v) -> bool:
        v = as_rows(self.spec, v, self.ambient_dim)
        if v.shape[1] != self.ambient_dim:
            raise UsageError("vector length differs from ambient dimension")
        return not self.reduce(v).any()

    def contains_all(self, vectors) -> bool:
        v = as_rows(self.spec, vectors, self.ambient_dim)
        return v.shape[0] == 0 or not self.reduce(v).any()

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        return other.contains_all(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.spec, self.ambient_dim, self.basis.tobytes()))

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return span(self.spec, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.spec})"


def _from_rows(spec: FieldSpec, rows: np.ndarray, ambient_dim: int) -> Subspace:
    if rows.shape[0] == 0:
        return Subspace.zero(spec, ambient_dim)
    red, piv = rref_array(spec, rows)
    return Subspace(spec, ambient_dim, red, tuple(int(c) for c in piv))


def span(spec, vectors, ambient_dim: int) -> Subspace:
    spec = as_field(spec)
    v = as_rows(spec, vectors, ambient_dim)
    if v.shape[0] and v.shape[1] != ambient_dim:
        raise UsageError(f"vectors have length {v.shape[1]}, expected {ambient_dim}")
    return _from_rows(spec, v, ambient_dim)


def contains(s: Subspace, v) -> bool:
    return s.contains(v)


def quotient_dim(total: Subspace, sub: Subspace) -> int:
    if not sub <= total:
        raise DomainError("sub is not contained in total")
    return total.dim - sub.dim


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce [[a, a], [b, 0]]; rows with zero left half span a ∩ b."""
    a._check(b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.spec, n)
    top = np.hstack([a.basis, a.basis])
    bottom = np.hstack([b.basis, np.zeros_like(b.basis)])
    red, piv = rref_array(a.spec, np.vstack([top, bottom]))
    keep = [i for i, c in enumerate(piv) if c >= n]
    return _from_rows(a.spec, red[keep, n:], n)


def sum_of(spaces: Sequence[Subspace]) -> Subspace:
    first = spaces[0]
    return span(first.spec, np.vstack([s.basis for s in spaces]), first.ambient_dim)


class EchelonAccumulator:
    """Online echelon basis fed in row batches.

    Batches are reduced against the current basis and merged, so the stacked
    matrix never holds more than ``basis + chunk`` rows.  The end result is
    the RREF of the span, identical to reducing everything at once.
    """

    def __init__(self, spec, ambient_dim: int, chunk: int = 2048):
        self.spec = as_field(spec)
        self.ambient_dim = ambient_dim
        self.chunk = chunk
        self._basis = np.zeros((0, ambient_dim), dtype=np.uint8)
        self._pivots: tuple[int, ...] = ()
        self._pending: list[np.ndarray] = []
        self._pending_rows = 0

    def add(self, rows) -> None:
        r = as_rows(self.spec, rows, self.ambient_dim)
        if r.shape[0] == 0:
            return
        self._pending.append(r)
        self._pending_rows += r.shape[0]
        if self._pending_rows >= self.chunk:
            self._flush()

    def _flush(self) -> None:
        if not self._pending:
            return
        batch = np.vstack(self._pending)
        self._pending, self._pending_rows = [], 0
        if len(self._pivots) == self.ambient_dim:
            return
        if self._basis.shape[0]:
            coef = batch[:, list(self._pivots)]
            batch = self.spec.vsub(batch, self.spec.matmul(coef, self._basis))
            batch = batch[batch.any(axis=1)]
            if batch.shape[0] == 0:
                return
        red, piv = rref_array(self.spec, np.vstack([self._basis, batch]))
        self._basis, self._pivots = red, tuple(int(c) for c in piv)

    @property
    def rank(self) -> int:
        self._flush()
        return len(self._pivots)

    def subspace(self) -> Subspace:
        self._flush()
        return Subspace(self.spec, self.ambient_dim, self._basis.copy(), self._pivots)
