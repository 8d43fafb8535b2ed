"""Pure-Python versions of the scalar recursion kernels.

Each function mirrors one in ``_kernels.pyx`` exactly; the package picks the
compiled module when it is importable.
"""
from __future__ import annotations

import math

import numpy as np

RENORM_EVERY = 64


def forward_psi(a: float, w: float, two_k: int, n_max: int) -> np.ndarray:
    """Regular solution ``Psi_0..Psi_{n_max}`` of the normalized Sl2 recursion.

    ``(a n - w) C_n - s_{n-1} C_{n-1} - s_n C_{n+1} = 0`` with
    ``s_n = sqrt((n+1)(2k+n))`` and ``C_0 = 1``.
    """
    out = np.empty(n_max + 1)
    out[0] = 1.0
    prev = 0.0
    cur = 1.0
    s_prev = 0.0
    for n in range(n_max):
        s_n = math.sqrt((n + 1.0) * (two_k + n))
        nxt = ((a * n - w) * cur - s_prev * prev) / s_n
        out[n + 1] = nxt
        prev, cur, s_prev = cur, nxt, s_n
    return out


def backward_minimal(a: float, w: float, two_k: int, n_from: int, n_to: int, n_start: int):
    """Miller backward recursion for the minimal solution on ``[n_from, n_to]``.

    Starts from ``C_{n_start+1} = 0``, ``C_{n_start} = 1`` and rescales every
    ``RENORM_EVERY`` steps. Returns ``(values, log_scale)``; the values are the
    minimal solution up to a positive factor, ``log_scale`` tracks the
    accumulated rescaling of the window.
    """
    width = n_to - n_from + 1
    out = np.zeros(width)
    nxt = 0.0
    cur = 1.0
    log_scale = 0.0
    if n_start <= n_to:
        out[n_start - n_from] = cur
    steps = 0
    for n in range(n_start, n_from, -1):
        s_n = math.sqrt((n + 1.0) * (two_k + n))
        s_m = math.sqrt(n * (two_k + n - 1.0))
        prev = ((a * n - w) * cur - s_n * nxt) / s_m
        nxt, cur = cur, prev
        idx = n - 1 - n_from
        if idx < width:
            out[idx] = cur
        steps += 1
        if steps % RENORM_EVERY == 0:
            scale = abs(cur)
            if scale > 0.0:
                cur /= scale
                nxt /= scale
                log_scale += math.log(scale)
                lo = max(idx, 0)
                if lo < width:
                    out[lo:] /= scale
    return out, log_scale


def su2_forward(a: float, z: float, two_j: int, n_max: int) -> np.ndarray:
    """``K_0..K_{n_max}`` of the Su2 recursion with ``K_0 = 1``.

    ``(a (n - j) + z) K_n + (2j - n + 1) K_{n-1} + (n + 1) K_{n+1} = 0``.
    """
    j = 0.5 * two_j
    out = np.empty(n_max + 1)
    out[0] = 1.0
    prev = 0.0
    cur = 1.0
    for n in range(n_max):
        nxt = -((a * (n - j) + z) * cur + (two_j - n + 1.0) * prev) / (n + 1.0)
        out[n + 1] = nxt
        prev, cur = cur, nxt
    return out


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal ``(diag, off)`` below ``x``."""
    count = 0
    q = 1.0
    n = len(diag)
    for i in range(n):
        if i == 0:
            q = diag[0] - x
        else:
            if q == 0.0:
                q = 1e-300
            q = diag[i] - x - off[i - 1] * off[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def bisect_eigenvalue(diag, off, index: int, lo: float, hi: float, tol: float) -> float:
    """``index``-th (0-based) eigenvalue by Sturm bisection inside ``[lo, hi]``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sturm_count(diag, off, mid) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
