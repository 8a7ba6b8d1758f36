"""Row-reduction kernels over F_q.

Two interchangeable implementations of in-place reduced row echelon form on
packed ``uint8`` matrices: a numba ``@njit`` loop and a vectorised numpy
version.  Set ``HITKIT_NO_NUMBA=1`` to force the numpy path (numba is also
skipped automatically when it cannot be imported).  Both return identical
results; RREF of a row space is unique, so there is nothing to reconcile.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("HITKIT_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def rref_numpy(m: np.ndarray, add_t, mul_t, neg_t, inv_t) -> np.ndarray:
    """Reduce ``m`` in place; return the pivot columns."""
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        lead = m[r, c]
        if lead != 1:
            m[r, c:] = mul_t[inv_t[lead]][m[r, c:]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            f = neg_t[m[others, c]]
            seg = m[r, c:]
            m[others, c:] = add_t[m[others, c:], mul_t[f[:, None], seg[None, :]]]
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def rref_numpy_prime(m: np.ndarray, p: int) -> np.ndarray:
    """Prime-field variant using integer arithmetic mod p."""
    rows, cols = m.shape
    w = m.astype(np.int32)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(w[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            w[[r, piv]] = w[[piv, r]]
        lead = int(w[r, c])
        if lead != 1:
            w[r, c:] = (w[r, c:] * pow(lead, p - 2, p)) % p
        others = np.flatnonzero(w[:, c])
        others = others[others != r]
        if others.size:
            f = w[others, c][:, None]
            w[others, c:] = (w[others, c:] - f * w[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    m[:] = w.astype(np.uint8)
    return np.array(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _rref_tables_nb(m, add_t, mul_t, neg_t, inv_t):
        rows, cols = m.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    t = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = t
            lead = m[r, c]
            if lead != 1:
                li = inv_t[lead]
                for j in range(c, cols):
                    m[r, j] = mul_t[li, m[r, j]]
            for i in range(rows):
                if i != r and m[i, c] != 0:
                    f = neg_t[m[i, c]]
                    for j in range(c, cols):
                        if m[r, j] != 0:
                            m[i, j] = add_t[m[i, j], mul_t[f, m[r, j]]]
            pivots[r] = c
            r += 1
        return pivots[:r]

    @njit(cache=True)
    def _rref_gf2_nb(m):
        rows, cols = m.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    t = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = t
            for i in range(rows):
                if i != r and m[i, c] != 0:
                    for j in range(c, cols):
                        m[i, j] ^= m[r, j]
            pivots[r] = c
            r += 1
        return pivots[:r]


def pack_gf2(m: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into little-endian uint64 words per row."""
    rows, cols = m.shape
    words = (cols + 63) // 64
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = m
    bits = np.packbits(padded.reshape(rows, words, 64)[:, :, ::-1], axis=2)
    return bits.view(">u8").reshape(rows, words).astype(np.uint64)


def unpack_gf2(w: np.ndarray, cols: int) -> np.ndarray:
    rows, words = w.shape
    b = w.astype(">u8").view(np.uint8).reshape(rows, words, 8)
    bits = np.unpackbits(b, axis=2)[:, :, ::-1].reshape(rows, words * 64)
    return np.ascontiguousarray(bits[:, :cols])


def rref_gf2_packed_numpy(w: np.ndarray, cols: int) -> np.ndarray:
    rows = w.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for c in range(cols):
        if r == rows:
            break
        wi, bi = c >> 6, np.uint64(c & 63)
        col = (w[r:, wi] >> bi) & one
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            w[[r, piv]] = w[[piv, r]]
        hit = np.flatnonzero((w[:, wi] >> bi) & one)
        hit = hit[hit != r]
        if hit.size:
            w[hit, wi:] ^= w[r, wi:]
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _rref_gf2_packed_nb(w, cols):
        rows, words = w.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        one = np.uint64(1)
        for c in range(cols):
            if r == rows:
                break
            wi = c >> 6
            bi = np.uint64(c & 63)
            piv = -1
            for i in range(r, rows):
                if (w[i, wi] >> bi) & one:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(wi, words):
                    t = w[r, j]
                    w[r, j] = w[piv, j]
                    w[piv, j] = t
            for i in range(rows):
                if i != r and (w[i, wi] >> bi) & one:
                    for j in range(wi, words):
                        w[i, j] ^= w[r, j]
            pivots[r] = c
            r += 1
        return pivots[:r]


def rref_gf2_packed(w: np.ndarray, cols: int, use_numba: bool | None = None) -> np.ndarray:
    """RREF of a bit-packed GF(2) matrix in place; returns pivot columns."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if w.shape[0] == 0 or cols == 0:
        return np.zeros(0, dtype=np.int64)
    if use_numba:
        return _rref_gf2_packed_nb(w, cols)
    return rref_gf2_packed_numpy(w, cols)


def rref_inplace(m: np.ndarray, field, use_numba: bool | None = None) -> np.ndarray:
    """Dispatch to the numba kernel when available, else numpy."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return np.zeros(0, dtype=np.int64)
    if field.q == 2 and m.shape[1] >= 256:
        w = pack_gf2(m)
        piv = rref_gf2_packed(w, m.shape[1], use_numba)
        m[:] = unpack_gf2(w, m.shape[1])
        return piv
    if use_numba:
        if field.q == 2:
            return _rref_gf2_nb(m)
        return _rref_tables_nb(m, field.add_table, field.mul_table, field.neg_table, field.inv_table)
    if field.is_prime:
        return rref_numpy_prime(m, field.p)
    return rref_numpy(m, field.add_table, field.mul_table, field.neg_table, field.inv_table)
