#!/usr/bin/env python3
"""Row reduction: numba kernels against the numpy fallback.

Times in-place RREF on random matrices over F_2 (byte and bit-packed
paths), F_3 and F_4, and checks that both backends return the same
reduced matrix.  The first numba call includes JIT compilation and is
reported separately.

    python3 benchmarks/bench_rref.py --repeat 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hitkit import _accel
from hitkit.field import get_field

CASES = [
    # (q, rows, cols)
    (2, 200, 200),
    (2, 400, 2000),
    (3, 200, 200),
    (3, 500, 500),
    (4, 200, 200),
    (5, 300, 300),
]


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(repeat: int, seed: int) -> list[tuple]:
    rng = np.random.default_rng(seed)
    out = []
    for q, rows, cols in CASES:
        F = get_field(q)
        a = rng.integers(0, q, size=(rows, cols)).astype(np.uint8)
        a[rows // 2 :] = a[: rows - rows // 2]  # force rank deficiency

        def with_backend(use_numba: bool):
            m = a.copy()
            piv = _accel.rref_inplace(m, F, use_numba)
            return m, piv

        m_np, piv_np = with_backend(False)
        t_np = _time(lambda: with_backend(False), repeat)
        if _accel.HAVE_NUMBA:
            t0 = time.perf_counter()
            m_nb, piv_nb = with_backend(True)
            t_first = time.perf_counter() - t0
            t_nb = _time(lambda: with_backend(True), repeat)
            same = np.array_equal(m_np, m_nb) and np.array_equal(piv_np, piv_nb)
        else:
            t_first = t_nb = float("nan")
            same = True
        path = "packed" if q == 2 and cols >= 256 else "bytes"
        out.append((q, rows, cols, path, len(piv_np), t_np, t_first, t_nb, same))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"numba available: {_accel.HAVE_NUMBA}")
    print(f"{'q':>2} {'shape':>10} {'path':>6} {'rank':>5} {'numpy s':>9} {'jit+1st s':>10} {'numba s':>9} {'speedup':>8}  same")
    ok = True
    for q, r, c, path, rk, t_np, t_first, t_nb, same in run(args.repeat, args.seed):
        speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{q:>2} {f'{r}x{c}':>10} {path:>6} {rk:>5} {t_np:>9.4f} {t_first:>10.4f} {t_nb:>9.4f} {speed:>8.1f}  {same}")
        ok &= same
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
