"""Time the compiled recursion kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``. Both backends
are imported directly, so the result does not depend on ``NCQM_PURE_PYTHON``.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from ncqm import _kernels_py as py

try:
    from ncqm import _kernels as cy
except ImportError:
    cy = None


def cases():
    rng = np.random.default_rng(7)
    diag = np.sort(rng.uniform(0, 100, 2000))
    off = rng.uniform(0.5, 2.0, 1999)
    return {
        "forward_psi n=20000": lambda k: k.forward_psi(1.5, 0.3, 1, 20000),
        "backward_minimal n=20000": lambda k: k.backward_minimal(2.5, -1.0, 1, 0, 200, 20000),
        "su2_forward 2j=150": lambda k: k.su2_forward(0.5, 0.3, 150, 150),
        "sturm_count dim=2000": lambda k: k.sturm_count(diag, off, 50.0),
        "bisect_eigenvalue dim=2000": lambda k: k.bisect_eigenvalue(diag, off, 1000, -10.0, 110.0, 1e-10),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"{'kernel':30s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}  max rel diff")
    for name, fn in cases().items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{name:30s} {t_py:12.3f} {'n/a':>12s}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        a, b = fn(py), fn(cy)
        if isinstance(a, tuple):
            a, b = a[0], b[0]
        a, b = np.atleast_1d(np.asarray(a, dtype=float)), np.atleast_1d(np.asarray(b, dtype=float))
        rel = float(np.max(np.abs(a - b)) / max(np.max(np.abs(a)), 1e-300))
        print(f"{name:30s} {t_py:12.3f} {t_cy:12.3f} {t_py / t_cy:8.1f}  {rel:.1e}")


if __name__ == "__main__":
    main()
