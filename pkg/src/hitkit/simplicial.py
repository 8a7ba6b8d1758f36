"""The complexes Delta(V*, k) and K and their face counts.

Both complexes are cut out by hyperplanes: a vertex set is a face exactly
when it contains none of the sets ``S \\ (vertices lying on H)``.  A
:class:`Complex` therefore stores its minimal non-faces as bitmasks, which
makes the face oracle a handful of integer operations.  Small complexes
are enumerated exhaustively (numpy over all 2^N masks) and serve as the
oracle for the Mobius-function counts used at larger sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np

from .config import LIMITS
from .errors import ResourceError, UsageError
from .field import FieldSpec, as_field
from .invariants import gaussian_binomial, projective_points, _dot
from .linalg import rank


@dataclass
class Complex:
    """Simplicial complex on vertices 0..N-1 given by its minimal non-faces.

    ``kind`` and ``params`` record where the complex came from so that face
    counts can use the closed-form Mobius path instead of enumeration.
    """

    vertex_count: int
    nonfaces: tuple[int, ...]
    labels: tuple = ()
    kind: str = "generic"
    params: tuple = ()
    rank_oracle: Callable[[int], bool] | None = field(default=None, repr=False, compare=False)

    def is_face(self, mask: int) -> bool:
        return all(mask & nf != nf for nf in self.nonfaces)

    def face_table(self) -> np.ndarray:
        """Boolean array indexed by all 2^N vertex masks."""
        n = self.vertex_count
        if n > LIMITS.max_brute_vertices:
            raise ResourceError(f"{n} vertices exceeds brute-force cap {LIMITS.max_brute_vertices}")
        masks = np.arange(1 << n, dtype=np.int64)
        ok = np.ones(1 << n, dtype=bool)
        for nf in self.nonfaces:
            ok &= (masks & nf) != nf
        return ok

    def faces(self) -> list[int]:
        return [int(m) for m in np.flatnonzero(self.face_table())]

    def facet_size(self) -> int:
        if self.kind == "delta":
            n, q, k = self.params
            return k * (q**n - 1) // (q - 1) - n
        if self.kind == "affine":
            n, q = self.params
            return q ** (n - 1) - n
        table = self.face_table()
        sizes = _popcount(np.flatnonzero(table))
        return int(sizes.max())

    @property
    def dim(self) -> int:
        return self.facet_size() - 1

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Sequence[Sequence[int]]) -> Complex:
        """Complex generated by the given facets (minimal non-faces found by enumeration)."""
        fmasks = [sum(1 << v for v in f) for f in facets]
        if vertex_count > LIMITS.max_brute_vertices:
            raise ResourceError("too many vertices for facet enumeration")
        masks = np.arange(1 << vertex_count, dtype=np.int64)
        face = np.zeros(1 << vertex_count, dtype=bool)
        for fm in fmasks:
            face |= (masks & ~fm) == 0
        return cls(vertex_count, tuple(_minimal_nonfaces(face, vertex_count)), tuple(range(vertex_count)))


def _popcount(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64)
    c = np.zeros(a.shape, dtype=np.int64)
    while a.any():
        c += (a & np.uint64(1)).astype(np.int64)
        a = a >> np.uint64(1)
    return c


def _minimal_nonfaces(face: np.ndarray, n: int) -> list[int]:
    out = []
    for m in np.flatnonzero(~face):
        m = int(m)
        if all(face[m & ~(1 << v)] for v in range(n) if m >> v & 1):
            out.append(m)
    return out


# --- constructions -----------------------------------------------------------


def _hyperplane_functionals(n: int, F: FieldSpec):
    return projective_points(n, F)


def build_delta(n: int, q, k: int) -> Complex:
    """Delta(V*, k): k labelled copies of every line; faces are complements of spanning sets."""
    F = as_field(q)
    if n < 1 or k < 1:
        raise UsageError("need n >= 1 and k >= 1")
    lines = projective_points(n, F)
    labels = tuple((l, i) for l in lines for i in range(k))
    N = len(labels)
    nonfaces = []
    for c in _hyperplane_functionals(n, F):
        off = sum(1 << v for v, (l, _) in enumerate(labels) if _dot(F, c, l) != 0)
        nonfaces.append(off)
    vecs = [l for l, _ in labels]

    def by_rank(mask: int) -> bool:
        comp = [vecs[v] for v in range(N) if not mask >> v & 1]
        return bool(comp) and rank(F, comp) == n

    return Complex(N, tuple(nonfaces), labels, "delta", (n, F.q, k), by_rank)


def affine_chart(n: int, q) -> tuple[tuple[int, ...], ...]:
    """Points of E = x_n + span(x_1..x_{n-1}) as coefficient vectors."""
    F = as_field(q)
    return tuple(tuple(w) + (1,) for w in itertools.product(range(F.q), repeat=n - 1))


def affine_hyperplane_functionals(n: int, q) -> list[tuple[int, ...]]:
    """Normalized c with c restricted to span(x_1..x_{n-1}) nonzero; E ∩ ker c is an affine hyperplane."""
    F = as_field(q)
    return [c for c in projective_points(n, F) if any(c[: n - 1])]


def build_affine_K(n: int, q) -> Complex:
    """K on the points of E; faces are complements of affinely spanning subsets."""
    F = as_field(q)
    if n < 2:
        raise UsageError("need n >= 2")
    pts = affine_chart(n, F)
    N = len(pts)
    nonfaces = []
    for c in affine_hyperplane_functionals(n, F):
        nonfaces.append(sum(1 << v for v, a in enumerate(pts) if _dot(F, c, a) != 0))

    def by_rank(mask: int) -> bool:
        comp = [pts[v] for v in range(N) if not mask >> v & 1]
        return bool(comp) and rank(F, comp) == n

    return Complex(N, tuple(nonfaces), pts, "affine", (n, F.q), by_rank)


# --- face counts -------------------------------------------------------------


@dataclass(frozen=True)
class FHData:
    f: tuple[int, ...]
    h: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.h) - 1


def h_from_f(f: Sequence[int], d: int) -> tuple[int, ...]:
    """h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_{i-1}, f_{-1} = 1."""
    fx = [1] + list(f)
    return tuple(sum((-1) ** (k - i) * comb(d - i, k - i) * fx[i] for i in range(k + 1)) for k in range(d + 1))


def spanning_subset_count(n: int, q, k: int, size: int) -> int:
    """Size-`size` subsets of the k-fold line list of F_q^n whose lines span."""
    F = as_field(q)
    qq = F.q
    tot = 0
    for w in range(n + 1):
        pts = k * (qq**w - 1) // (qq - 1)
        tot += gaussian_binomial(n, w, qq) * (-1) ** (n - w) * qq ** comb(n - w, 2) * comb(pts, size)
    return tot


def affine_spanning_count(n: int, q, size: int) -> int:
    """Size-`size` subsets of E that affinely span E (equivalently span V*)."""
    F = as_field(q)
    qq = F.q
    tot = 0
    for u in range(1, n + 1):
        count = gaussian_binomial(n, u, qq) - gaussian_binomial(n - 1, u, qq)
        tot += count * (-1) ** (n - u) * qq ** comb(n - u, 2) * comb(qq ** (u - 1), size)
    return tot


def _f_mobius(c: Complex) -> tuple[int, ...]:
    N = c.vertex_count
    d = c.facet_size()
    if c.kind == "delta":
        n, q, k = c.params
        return tuple(spanning_subset_count(n, q, k, N - j) for j in range(1, d + 1))
    n, q = c.params
    return tuple(affine_spanning_count(n, q, N - j) for j in range(1, d + 1))


def _f_brute(c: Complex) -> tuple[int, ...]:
    sizes = _popcount(np.flatnonzero(c.face_table()))
    d = int(sizes.max())
    counts = np.bincount(sizes, minlength=d + 1)
    return tuple(int(x) for x in counts[1 : d + 1])


def f_vector(c: Complex, method: str = "auto") -> FHData:
    if method not in ("auto", "brute", "mobius"):
        raise UsageError(f"unknown method {method!r}")
    if method == "mobius" or (method == "auto" and c.kind in ("delta", "affine")):
        if c.kind not in ("delta", "affine"):
            raise UsageError("Mobius counting needs Delta(V*,k) or K")
        f = _f_mobius(c)
    else:
        f = _f_brute(c)
    d = len(f)
    return FHData(f, h_from_f(f, d))


def facet_count_formula(n: int, q, k: int) -> int:
    """(number of unordered bases of lines) * k^n."""
    F = as_field(q)
    qq = F.q
    gl = 1
    for i in range(n):
        gl *= qq**n - qq**i
    frames = gl // ((qq - 1) ** n * _fact(n))
    return frames * k**n


def _fact(n: int) -> int:
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def reduced_euler(c: Complex, fh: FHData | None = None) -> int:
    fh = fh or f_vector(c)
    return -1 + sum((-1) ** i * x for i, x in enumerate(fh.f))


# --- exchange property -------------------------------------------------------


def _max_face_below(face: np.ndarray, n: int) -> np.ndarray:
    """mf[A] = largest face size inside A (max-zeta transform over subsets)."""
    mf = np.where(face, _popcount(np.arange(1 << n)), 0)
    idx = np.arange(1 << n)
    for v in range(n):
        bit = 1 << v
        sel = idx[(idx & bit) != 0]
        mf[sel] = np.maximum(mf[sel], mf[sel ^ bit])
    return mf


def check_matroid_exchange(c: Complex) -> bool:
    """Exchange property via: for every face F, no face of size > |F| avoids ext(F)."""
    n = c.vertex_count
    if n > LIMITS.max_exchange_vertices:
        raise ResourceError(f"{n} vertices exceeds exchange-check cap {LIMITS.max_exchange_vertices}")
    face = c.face_table()
    mf = _max_face_below(face, n)
    idx = np.arange(1 << n)
    faces = idx[face]
    ext = np.zeros(faces.shape, dtype=np.int64)
    for v in range(n):
        bit = 1 << v
        grow = ((faces & bit) == 0) & face[faces | bit]
        ext |= np.where(grow, bit, 0)
    full = (1 << n) - 1
    return bool(np.all(mf[full & ~ext] == _popcount(faces)))


def check_matroid_exchange_pairwise(c: Complex) -> bool:
    """Literal check over all face pairs |F| < |G| (small complexes only)."""
    faces = c.faces()
    size = {f: bin(f).count("1") for f in faces}
    fs = set(faces)
    for F in faces:
        for G in faces:
            if size[F] < size[G]:
                diff = G & ~F
                if not any(F | (1 << v) in fs for v in range(c.vertex_count) if diff >> v & 1):
                    return False
    return True


# --- duality -----------------------------------------------------------------


def alexander_dual(c: Complex) -> Complex:
    """Faces of the dual are the complements of non-faces."""
    n = c.vertex_count
    face = c.face_table()
    full = (1 << n) - 1
    idx = np.arange(1 << n)
    dual = ~face[full ^ idx]
    return Complex(n, tuple(_minimal_nonfaces(dual, n)), c.labels)


def dual_euler_relation(c: Complex) -> tuple[bool, int, int]:
    """h_d(c) = (-1)^(|S|-d) chi~(c*); returns (holds, h_d, chi~(c*))."""
    if c.vertex_count > LIMITS.max_exchange_vertices:
        raise ResourceError("dual construction is capped at the exchange-check size")
    fh = f_vector(c, "brute")
    dual = alexander_dual(c)
    face = dual.face_table()
    if face.any():
        sizes = _popcount(np.flatnonzero(face))
        chi = int(sum((-1) ** (int(s) - 1) for s in sizes))
    else:  # void complex
        chi = 0
    hd = fh.h[-1]
    return hd == (-1) ** (c.vertex_count - fh.d) * chi, hd, chi


# --- Stanley-Reisner generators ----------------------------------------------


def sr_generators(c: Complex, method: str = "stored") -> list[frozenset[int]]:
    """Minimal non-faces as vertex sets; ``method="brute"`` re-derives them from the face table."""
    if method == "brute":
        masks = _minimal_nonfaces(c.face_table(), c.vertex_count)
    else:
        masks = sorted(set(c.nonfaces))
    return sorted((frozenset(v for v in range(c.vertex_count) if m >> v & 1) for m in masks), key=sorted)
