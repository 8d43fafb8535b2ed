"""Orthogonal polynomials and solutions of the three-term recursions.

The Sl2 recursion in normalized coefficients reads

    (a n - w) C_n - s_{n-1} C_{n-1} - s_n C_{n+1} = 0,   s_n = sqrt((n+1)(2k+n)),

with ``a = b + 1/b``. The Su2 recursion for the unnormalized ``K_n`` reads

    (a (n - j) + z) K_n + (2j - n + 1) K_{n-1} + (n + 1) K_{n+1} = 0,

with ``a = b - 1/b``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import kernels
from .errors import NotBoundRegime, ThetaZero, ValidationError
from .params import NCParams, Region, require_noncritical

log = logging.getLogger(__name__)

# Miller start indices beyond this are refused.
MAX_BACKWARD_START = 4_000_000


# --- classical polynomials ----------------------------------------------------


def laguerre(n: int, alpha: float, x):
    """Associated Laguerre polynomial ``L_n^(alpha)(x)`` by upward recurrence."""
    if n < 0:
        raise ValidationError("n must be >= 0")
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for i in range(n):
        nxt = ((2 * i + 1 + alpha - x) * cur - (i + alpha) * prev) / (i + 1)
        prev, cur = cur, nxt
    return cur[()] if cur.ndim == 0 else cur


def laguerre_roots(n: int, alpha: float) -> np.ndarray:
    """Zeros of ``L_n^(alpha)`` as eigenvalues of the symmetric Jacobi matrix."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if alpha <= -1:
        raise ValidationError("alpha must be > -1")
    i = np.arange(n)
    diag = 2 * i + alpha + 1.0
    off = -np.sqrt(i[1:] * (i[1:] + alpha))
    return eigvalsh_tridiagonal(diag, off)


def _rising_binom(top: float, count: int) -> float:
    """Generalized binomial ``C(top, count)`` as a product, valid for any real ``top``."""
    out = 1.0
    for i in range(count):
        out *= (top - i) / (i + 1)
    return out


def jacobi(n: int, alpha: float, beta: float, x: float) -> float:
    """Jacobi polynomial ``P_n^(alpha, beta)(x)``.

    Uses the finite double sum
    ``sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)``,
    which has no parameter-dependent denominators, so negative-integer
    ``alpha``, ``beta`` or ``alpha + beta`` need no special handling.
    """
    if n < 0:
        raise ValidationError("n must be >= 0")
    u = 0.5 * (x - 1.0)
    v = 0.5 * (x + 1.0)
    total = 0.0
    for s in range(n + 1):
        total += _rising_binom(n + alpha, n - s) * _rising_binom(n + beta, s) * u**s * v ** (n - s)
    return total


# --- recursion setup ------------------------------------------------------------


@dataclass(frozen=True)
class RecursionSpec:
    """Coefficients of one recursion zone.

    ``family`` is ``"sl2"`` (spectral variable ``w``, label ``k``) or ``"su2"``
    (spectral variable ``z``, label ``j``).
    """

    family: str
    a: float
    b: float
    spectral: float
    label: Fraction

    @property
    def two_label(self) -> int:
        return int(2 * self.label)

    def with_spectral(self, value: float) -> "RecursionSpec":
        return RecursionSpec(self.family, self.a, self.b, value, self.label)


def _require_theta(params: NCParams) -> None:
    if params.theta == 0:
        raise ThetaZero("theta = 0 has no radial lattice")


def recursion_b(params: NCParams) -> float:
    """``b = sqrt|1 - kappa theta / hbar^2|``."""
    require_noncritical(params)
    return math.sqrt(abs(1.0 - params.ratio))


def sl2_recursion(params: NCParams, k, s: int, energy: float, potential: float = 0.0) -> RecursionSpec:
    """Recursion zone for ``<k, s(2k-1)>`` at energy ``E`` over a constant ``V``."""
    _require_theta(params)
    region = require_noncritical(params)
    if region is Region.SUPER_CRITICAL:
        raise ValidationError("sl2 recursion needs kappa < kappa_c")
    k = Fraction(k)
    b = recursion_b(params)
    r = params.ratio
    h2 = params.hbar**2
    kf = float(k)
    w = (
        params.mu * params.theta * (energy - potential) / (h2 * b)
        - 2 * kf / b
        + r * (2 * kf * (s + 1) - s) / (2 * b)
    )
    return RecursionSpec("sl2", b + 1.0 / b, b, w, k)


def sl2_energy(params: NCParams, k, s: int, w: float) -> float:
    """Energy belonging to the spectral value ``w`` (zero potential)."""
    b = recursion_b(params)
    kf = float(k)
    r = params.ratio
    return params.hbar**2 / (params.theta * params.mu) * (w * b + 2 * kf - r * (kf * (1 + s) - 0.5 * s))


def su2_recursion(params: NCParams, j, energy: float, potential: float = 0.0) -> RecursionSpec:
    _require_theta(params)
    if require_noncritical(params) is not Region.SUPER_CRITICAL:
        raise ValidationError("su2 recursion needs kappa > kappa_c")
    j = Fraction(j)
    b = recursion_b(params)
    h2 = params.hbar**2
    z = params.mu * params.theta * (energy - potential) / (h2 * b) - params.ratio * (2 * float(j) + 1) / (2 * b)
    return RecursionSpec("su2", b - 1.0 / b, b, z, j)


def su2_energy(params: NCParams, j, z: float) -> float:
    b = recursion_b(params)
    return z * params.hbar**2 * b / (params.theta * params.mu) + (2 * float(j) + 1) * params.kappa / (2 * params.mu)


# --- interior (regular) solutions -------------------------------------------------


@dataclass(frozen=True)
class CoefficientSequence:
    values: np.ndarray
    n_from: int
    provenance: str
    log_scale: float = 0.0

    def __getitem__(self, n: int) -> float:
        return float(self.values[n - self.n_from])

    @property
    def n_to(self) -> int:
        return self.n_from + len(self.values) - 1


def psi_interior(n: int, k, z: float) -> float:
    """``sqrt(n! (2k-1)! / (n+2k-1)!) L_n^(2k-1)(z)``."""
    k = Fraction(k)
    two_k = int(2 * k)
    lognorm = 0.5 * (math.lgamma(n + 1) + math.lgamma(two_k) - math.lgamma(n + two_k))
    return math.exp(lognorm) * float(laguerre(n, two_k - 1, z))


def psi_generating(n: int, k, w: float, spec: RecursionSpec) -> float:
    """Regular solution ``Psi_{n,k}(w)`` of the Sl2 recursion (``Psi_0 = 1``)."""
    if spec.family != "sl2":
        raise ValidationError("psi_generating needs an sl2 recursion")
    return float(kernels.forward_psi(spec.a, w, int(2 * Fraction(k)), n)[n])


def interior_sequence(spec: RecursionSpec, n_max: int) -> CoefficientSequence:
    """``Psi_0..Psi_{n_max}`` (Sl2) or ``K_0..K_{n_max}`` (Su2)."""
    if spec.family == "sl2":
        vals = kernels.forward_psi(spec.a, spec.spectral, spec.two_label, n_max)
    else:
        vals = kernels.su2_forward(spec.a, spec.spectral, spec.two_label, n_max)
    return CoefficientSequence(vals, 0, "interior-regular")


def su2_polynomial(n: int, spec: RecursionSpec) -> float:
    """``K_n(z)`` of the Su2 recursion with ``K_0 = 1``."""
    if spec.family != "su2":
        raise ValidationError("su2_polynomial needs an su2 recursion")
    return float(kernels.su2_forward(spec.a, spec.spectral, spec.two_label, n)[n])


# --- exterior (minimal) solutions -------------------------------------------------


def _backward_start(spec: RecursionSpec, n_to: int) -> int:
    """Start index large enough that the dominant solution is suppressed below roundoff."""
    base = 2 * n_to + 50
    if spec.a > 2.0 + 1e-12:
        rho = min(spec.b, 1.0 / spec.b)
        need = n_to + int(math.ceil(40.0 / abs(math.log(rho)))) + 50
    else:
        mz = -(spec.spectral + 2 * float(spec.label))
        need = int(math.ceil((math.sqrt(max(n_to, 1)) + 10.0 / math.sqrt(mz)) ** 2)) + 50
    return max(base, need)


def minimal_exterior(spec: RecursionSpec, n_from: int, n_to: int, n_start: int | None = None) -> CoefficientSequence:
    """Subdominant solution on ``[n_from, n_to]``, normalized to 1 at ``n_from``.

    Raises
    ------
    NotBoundRegime
        For ``a = 2`` (``kappa = 0``) with ``w + 2k >= 0``, where both
        solutions oscillate and none is selected.
    """
    if spec.family != "sl2":
        raise ValidationError("minimal solutions exist only for the sl2 recursion")
    if n_from < 0 or n_to < n_from:
        raise ValidationError("need 0 <= n_from <= n_to")
    if spec.a <= 2.0 + 1e-12 and spec.spectral + 2 * float(spec.label) >= 0:
        raise NotBoundRegime("spectral value lies in the scattering regime")
    start = _backward_start(spec, n_to)
    if n_start is not None:
        start = max(start, n_start)
    if start > MAX_BACKWARD_START:
        raise NotBoundRegime(f"minimal solution needs backward start {start}; too close to threshold")
    vals, log_scale = kernels.backward_minimal(spec.a, spec.spectral, spec.two_label, n_from, n_to, start)
    head = vals[0]
    if head == 0.0:
        raise NotBoundRegime("minimal solution vanishes at the normalization index")
    return CoefficientSequence(vals / head, n_from, "exterior-minimal", log_scale + math.log(abs(head)))


def minimal_pair(spec: RecursionSpec, n_from: int) -> tuple[float, float]:
    """``(phi_{n_from}, phi_{n_from+1})`` of the minimal solution, scaled to unit norm.

    The overall factor is positive and continuous in the spectral value,
    which keeps matching functions free of spurious poles.
    """
    start = _backward_start(spec, n_from + 1)
    if start > MAX_BACKWARD_START:
        raise NotBoundRegime("too close to threshold")
    vals, _ = kernels.backward_minimal(spec.a, spec.spectral, spec.two_label, n_from, n_from + 1, start)
    norm = math.hypot(vals[0], vals[1])
    return vals[0] / norm, vals[1] / norm


def recursion_residual(spec: RecursionSpec, seq: CoefficientSequence) -> float:
    """Max relative residual of the Sl2 recursion over the inner rows of ``seq``."""
    c = seq.values
    two_k = spec.two_label
    worst = 0.0
    for i in range(1, len(c) - 1):
        n = seq.n_from + i
        s_n = math.sqrt((n + 1) * (two_k + n))
        s_m = math.sqrt(n * (two_k + n - 1))
        terms = ((spec.a * n - spec.spectral) * c[i], s_m * c[i - 1], s_n * c[i + 1])
        scale = max(abs(t) for t in terms) or 1.0
        worst = max(worst, abs(terms[0] - terms[1] - terms[2]) / scale)
    return worst


# --- polynomial roots -------------------------------------------------------------


def sl2_interior_matrix(a: float, k, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Tridiagonal whose eigenvalues are the ``w`` roots of ``Psi_size``."""
    two_k = int(2 * Fraction(k))
    n = np.arange(size, dtype=float)
    diag = a * n
    off = -np.sqrt((n[:-1] + 1) * (two_k + n[:-1]))
    return diag, off


def su2_interior_matrix(a: float, j, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrized tridiagonal whose eigenvalues are the ``z`` roots of ``K_size``."""
    jf = float(j)
    two_j = int(2 * Fraction(j))
    n = np.arange(size, dtype=float)
    diag = -a * (n - jf)
    off = -np.sqrt((n[:-1] + 1) * (two_j - n[:-1]))
    return diag, off


def polynomial_roots(spec: RecursionSpec, degree: int) -> np.ndarray:
    """Zeros of ``Psi_degree(w)`` or ``K_degree(z)`` in ascending order."""
    if degree < 1:
        return np.empty(0)
    if spec.family == "sl2":
        diag, off = sl2_interior_matrix(spec.a, spec.label, degree)
    else:
        diag, off = su2_interior_matrix(spec.a, spec.label, degree)
    if degree == 1:
        return diag.copy()
    return eigvalsh_tridiagonal(diag, off)


def bisection_roots(spec: RecursionSpec, degree: int, grid: int = 2000, tol: float = 1e-13) -> np.ndarray:
    """Zeros of the same polynomial from sign changes, refined by bisection.

    A secondary route used to validate :func:`polynomial_roots`. The search
    interval is the Gershgorin bound of the equivalent tridiagonal matrix.
    """
    if degree < 1:
        return np.empty(0)
    if spec.family == "sl2":
        diag, off = sl2_interior_matrix(spec.a, spec.label, degree)
    else:
        diag, off = su2_interior_matrix(spec.a, spec.label, degree)
    pad = np.zeros(degree)
    pad[:-1] += np.abs(off)
    pad[1:] += np.abs(off)
    lo = float(np.min(diag - pad)) - 1.0
    hi = float(np.max(diag + pad)) + 1.0

    def value(x):
        return _poly_value(spec, degree, x)

    xs = np.linspace(lo, hi, grid + 1)
    vs = [value(x) for x in xs]
    roots = []
    for i in range(grid):
        fa, fb = vs[i], vs[i + 1]
        if fa == 0.0:
            roots.append(xs[i])
            continue
        if fa * fb < 0:
            a_, b_ = xs[i], xs[i + 1]
            while b_ - a_ > tol * max(1.0, abs(a_)):
                mid = 0.5 * (a_ + b_)
                fm = value(mid)
                if fa * fm <= 0:
                    b_ = mid
                else:
                    a_, fa = mid, fm
            roots.append(0.5 * (a_ + b_))
    return np.array(roots)


def _poly_value(spec: RecursionSpec, degree: int, x: float) -> float:
    if spec.family == "sl2":
        return float(kernels.forward_psi(spec.a, x, spec.two_label, degree)[degree])
    return float(kernels.su2_forward(spec.a, x, spec.two_label, degree)[degree])
