"""The cylindrical well: interior counting, infinite and finite depth spectra."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import NCQMError, NotBoundRegime, ThetaZero, ValidationError
from .irreps import IrrepLabel, admissible_irreps, check_irrep_region
from .params import NCParams, Region, require_noncritical
from .solver import StepPotential, ZeroPotential, build_hamiltonian, lattice_floor, solve_converged
from .specfun import (
    laguerre_roots,
    minimal_pair,
    polynomial_roots,
    sl2_energy,
    sl2_recursion,
    su2_energy,
    su2_recursion,
)

log = logging.getLogger(__name__)

MATCHING_GRID = 400
VALIDATION_RTOL = 1e-6


@dataclass(frozen=True)
class WellSpec:
    """Depth ``V0`` (``math.inf`` for the infinite well) and radius ``A``."""

    V0: float
    A: float

    def __post_init__(self):
        if not (self.A > 0 and math.isfinite(self.A)):
            raise ValidationError(f"A must be > 0, got {self.A}")
        if not (self.V0 > 0):
            raise ValidationError(f"V0 must be > 0, got {self.V0}")

    @classmethod
    def from_ratio(cls, V0: float, a2_over_theta: float, theta: float) -> "WellSpec":
        if theta <= 0:
            raise ThetaZero("theta = 0 has no radial lattice")
        return cls(V0, math.sqrt(a2_over_theta * theta))

    @property
    def infinite(self) -> bool:
        return math.isinf(self.V0)

    def floor(self, params: NCParams) -> int:
        """``floor(A^2 / theta)``."""
        if params.theta == 0:
            raise ThetaZero("theta = 0 has no radial lattice")
        return lattice_floor(self.A * self.A / params.theta)


@dataclass(frozen=True)
class InteriorCount:
    """Interior extent of one irrep.

    ``threshold`` is ``n0`` for ``Sl2`` (interior ``n = m - k <= n0``) and
    ``m0`` for ``Su2`` (interior ``m <= m0``); ``count`` is the number of
    interior basis states.
    """

    irrep: IrrepLabel
    floor: int
    threshold: Fraction
    count: int


def interior_count(params: NCParams, irrep: IrrepLabel, A: float) -> InteriorCount:
    if params.theta == 0:
        raise ThetaZero("theta = 0 has no radial lattice")
    check_irrep_region(irrep, params.region)
    F = lattice_floor(A * A / params.theta)
    return _interior(irrep, F)


def _interior(irrep: IrrepLabel, F: int) -> InteriorCount:
    if irrep.is_su2:
        two_j = int(2 * irrep.j)
        m0 = Fraction(F - two_j - 1, 2)
        count = min(two_j + 1, max(0, math.floor(m0 + irrep.j) + 1))
        return InteriorCount(irrep, F, m0, count)
    two_k = int(2 * irrep.k)
    # interior iff 2m - l = 2k + 2n - l <= F
    n0 = (F - two_k + irrep.l) // 2
    return InteriorCount(irrep, F, Fraction(n0), max(n0 + 1, 0))


def _exterior_mask(tri_lattice: np.ndarray, F: int) -> np.ndarray:
    return np.asarray(tri_lattice) > F


def infinite_well_spectrum(params: NCParams, irrep: IrrepLabel, well: WellSpec) -> np.ndarray:
    """Eigenvalues of the kinetic matrix restricted to interior states."""
    ic = interior_count(params, irrep, well.A)
    if ic.count == 0:
        return np.empty(0)
    tri = build_hamiltonian(params, irrep, ZeroPotential(), None if irrep.is_su2 else ic.count)
    tri = tri.truncate(ic.count)
    assert not _exterior_mask(tri.lattice, ic.floor).any()
    if tri.dim == 1:
        return tri.diag.copy()
    from scipy.linalg import eigvalsh_tridiagonal

    return eigvalsh_tridiagonal(tri.diag, tri.offdiag)


def infinite_well_states(params: NCParams, irrep: IrrepLabel, well: WellSpec, basis_size: int | None = None):
    """Energies and eigenvectors embedded in a basis of ``basis_size`` weights.

    Coefficients on exterior weights are exactly zero.
    """
    from scipy.linalg import eigh_tridiagonal

    ic = interior_count(params, irrep, well.A)
    full = irrep.m_values(basis_size or ic.count + 4) if not irrep.is_su2 else irrep.m_values()
    size = len(full)
    if ic.count == 0:
        return np.empty(0), np.zeros((size, 0))
    tri = build_hamiltonian(params, irrep, ZeroPotential(), None if irrep.is_su2 else ic.count).truncate(ic.count)
    if tri.dim == 1:
        vals, vecs = tri.diag.copy(), np.ones((1, 1))
    else:
        vals, vecs = eigh_tridiagonal(tri.diag, tri.offdiag)
    out = np.zeros((size, ic.count))
    out[: ic.count] = vecs
    return vals, out


def infinite_well_roots(params: NCParams, irrep: IrrepLabel, well: WellSpec) -> np.ndarray:
    """Same energies from the zeros of the interior polynomial.

    ``kappa = 0`` uses the associated Laguerre zeros; other regions use the
    generating-function polynomials of the recursion.
    """
    ic = interior_count(params, irrep, well.A)
    if ic.count == 0:
        return np.empty(0)
    region = params.region
    if region is Region.ZERO_KAPPA:
        z = laguerre_roots(ic.count, int(2 * irrep.k) - 1)
        return params.hbar**2 / (params.mu * params.theta) * z
    if irrep.is_su2:
        spec = su2_recursion(params, irrep.j, 0.0)
        return np.array([su2_energy(params, irrep.j, z) for z in polynomial_roots(spec, ic.count)])
    spec = sl2_recursion(params, irrep.k, irrep.s, 0.0)
    return np.array([sl2_energy(params, irrep.k, irrep.s, w) for w in polynomial_roots(spec, ic.count)])


# --- finite depth -----------------------------------------------------------------


def matching_function(params: NCParams, irrep: IrrepLabel, V0: float, n0: int, energy: float) -> float:
    """Matching determinant whose zeros in ``(0, V0)`` are the bound-state energies.

    Interior coefficients follow the regular solution up to ``n0 + 1``; from
    ``n0 + 1`` on they must be proportional to the minimal solution. The row
    at ``n0 + 1`` (outer zone) couples both.
    """
    k, s = irrep.k, irrep.s
    inner = sl2_recursion(params, k, s, energy, 0.0)
    outer = sl2_recursion(params, k, s, energy, V0)
    psi = kernels.forward_psi(inner.a, inner.spectral, inner.two_label, n0 + 1)
    phi1, phi2 = minimal_pair(outer, n0 + 1)
    two_k = inner.two_label
    s_n0 = math.sqrt((n0 + 1) * (two_k + n0))
    s_n1 = math.sqrt((n0 + 2) * (two_k + n0 + 1))
    row = (outer.a * (n0 + 1) - outer.spectral) * phi1 - s_n1 * phi2
    return psi[n0 + 1] * row - s_n0 * psi[n0] * phi1


def finite_well_bound_states(
    params: NCParams, irrep: IrrepLabel, well: WellSpec, grid: int = MATCHING_GRID, validate: bool = True
) -> np.ndarray:
    """Bound-state energies of the finite well in one irrep.

    ``Sl2``: zeros in ``(0, V0)`` of :func:`matching_function`, bracketed on
    ``grid`` points and refined to ``1e-10 V0``. ``Su2``: the irrep is finite,
    so every eigenvalue of the ``(2j+1)``-dimensional matrix is a normalizable
    state and all are returned.

    With ``validate`` the Sl2 energies are checked against the truncated
    step-potential solver to ``1e-6`` relative.
    """
    if well.infinite:
        raise ValidationError("use infinite_well_spectrum for V0 = inf")
    ic = interior_count(params, irrep, well.A)
    V0 = well.V0
    if irrep.is_su2:
        tri = build_hamiltonian(params, irrep, StepPotential(V0, ic.floor))
        return _su2_levels(tri)
    n0 = int(ic.threshold)
    if n0 < 0:
        return np.empty(0)

    def f(e):
        return matching_function(params, irrep, V0, n0, e)

    expected = _expected_bound_count(params, irrep, V0, ic.floor)
    roots = _scan_roots(f, V0, grid)
    refine = 1
    while len(roots) < expected and refine < 64:
        refine *= 4
        roots = _scan_roots(f, V0, grid * refine)
    if len(roots) != expected:
        log.warning("%s: %d matching zeros found, Sturm count of the step matrix gives %d", irrep, len(roots), expected)
    out = np.array(roots)
    if validate and len(out):
        _validate_against_solver(params, irrep, V0, ic.floor, out)
    return out


def _scan_roots(f, V0: float, grid: int) -> list[float]:
    xs = V0 * (np.arange(grid) / grid)
    vals = []
    for x in xs:
        try:
            vals.append(f(x))
        except NotBoundRegime:
            vals.append(math.nan)
    roots = []
    for i in range(len(xs) - 1):
        fa, fb = vals[i], vals[i + 1]
        if not (math.isfinite(fa) and math.isfinite(fb)):
            continue
        if fa == 0.0:
            roots.append(float(xs[i]))
        elif fa * fb < 0:
            roots.append(brentq(f, xs[i], xs[i + 1], xtol=1e-10 * V0, rtol=1e-15))
    return roots


def _expected_bound_count(params, irrep, V0, F, size: int = 4096) -> int:
    """Eigenvalues below ``V0`` of the truncated step-potential matrix (Sturm count)."""
    tri = build_hamiltonian(params, irrep, StepPotential(V0, F), size)
    return kernels.sturm_count(tri.diag, tri.offdiag, V0 * (1 - 1e-9))


def _su2_levels(tri) -> np.ndarray:
    from scipy.linalg import eigvalsh_tridiagonal

    if tri.dim == 1:
        vals = tri.diag.copy()
    else:
        vals = eigvalsh_tridiagonal(tri.diag, tri.offdiag)
    # independent Sturm-bisection check
    spread = tri.norm() + 1.0
    for i, v in enumerate(vals):
        alt = kernels.bisect_eigenvalue(tri.diag, tri.offdiag, i, -spread, spread, 1e-14 * spread)
        if abs(alt - v) > 1e-10 * spread:
            raise NCQMError(f"eigenvalue {i} disagrees between solvers: {v} vs {alt}")
    return vals


def _validate_against_solver(params, irrep, V0, F, energies) -> None:
    res = solve_converged(params, irrep, StepPotential(V0, F), len(energies))
    for e, ref, ok in zip(energies, res.eigenvalues, res.converged):
        if not ok:
            continue
        if abs(e - ref) > VALIDATION_RTOL * max(1.0, abs(ref)):
            raise NCQMError(f"matching energy {e} disagrees with truncated solver {ref} in {irrep}")


# --- counting and closed forms ---------------------------------------------------


@dataclass(frozen=True)
class StateCount:
    irrep: IrrepLabel
    count: int

    def to_dict(self) -> dict:
        return {**self.irrep.to_dict(), "s": self.irrep.s, "count": self.count}


def state_counts(params: NCParams, A: float, max_label) -> list[StateCount]:
    """Number of infinite-well eigenvectors per irrep from the counting formulas."""
    if params.theta == 0:
        raise ThetaZero("theta = 0 has no radial lattice")
    region = require_noncritical(params)
    F = lattice_floor(A * A / params.theta)
    out = []
    for irrep in admissible_irreps(region, max_label):
        if irrep.is_su2:
            two_j = int(2 * irrep.j)
            # m0 + j = (F - 1)/2
            count = min(two_j + 1, max(0, (F - 1) // 2 + 1))
        elif irrep.s == 1:
            count = (F - 1) // 2 + 1
        else:
            count = max(0, (F + 1) // 2 - (int(2 * irrep.k) - 1))
        out.append(StateCount(irrep, max(count, 0)))
    return out


def su2_closed_forms(params: NCParams, well: WellSpec, j) -> np.ndarray:
    """Closed-form energies for ``j = 0`` and ``j = 1/2``."""
    from .errors import IrrepRegionMismatch

    if require_noncritical(params) is not Region.SUPER_CRITICAL:
        raise IrrepRegionMismatch("su2 irreps need kappa > kappa_c")
    j = Fraction(j)
    F = well.floor(params)
    V0 = 0.0 if well.infinite else well.V0
    ka, mu, h, th = params.kappa, params.mu, params.hbar, params.theta

    def outside(m: Fraction) -> float:
        # Theta(m - m0) with 2 m0 = F - 2j - 1, Theta(0) = 0
        return 1.0 if 2 * m > F - 2 * j - 1 else 0.0

    if j == 0:
        if well.infinite and outside(Fraction(0)):
            return np.empty(0)
        return np.array([ka / (2 * mu) + V0 * outside(Fraction(0))])
    if j == Fraction(1, 2):
        lo, hi = outside(Fraction(-1, 2)), outside(Fraction(1, 2))
        if well.infinite:
            raise ValidationError("closed forms for j = 1/2 need a finite V0")
        rad = mu * V0 / ka * (4 * h * h / (th * ka) + mu * V0 / ka - 2) * (hi - lo) + 1
        root = math.sqrt(rad)
        base = 0.5 * V0 * (lo + hi)
        return np.array([ka / mu * (1 - 0.5 * root) + base, ka / mu * (1 + 0.5 * root) + base])
    raise ValidationError("closed forms exist only for j = 0 and j = 1/2")
