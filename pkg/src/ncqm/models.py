"""Closed-form spectra of the isotropic oscillator and the Landau problem."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CriticalRegion, ValidationError
from .irreps import IrrepLabel, check_irrep_region, half_integer
from .params import NCParams, Region, require_noncritical


@dataclass(frozen=True)
class OscillatorSpec:
    """``H = P^2/(2 mu) + mu omega^2 X^2 / 2``."""

    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValidationError(f"omega must be > 0, got {self.omega}")


@dataclass(frozen=True)
class LandauSpec:
    """Charge ``e`` in a uniform field ``B`` (symmetric gauge), with ``eB > 0``."""

    B: float
    e: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.B) and math.isfinite(self.e)):
            raise ValidationError("B and e must be finite")
        if self.e * self.B <= 0:
            raise ValidationError(f"eB must be > 0, got {self.e * self.B}")

    @property
    def eB(self) -> float:
        return self.e * self.B


@dataclass(frozen=True, order=True)
class QuantaPair:
    n_plus: int
    n_minus: int

    def __post_init__(self):
        for v in (self.n_plus, self.n_minus):
            if int(v) != v or v < 0:
                raise ValidationError(f"quanta must be nonnegative integers, got {v!r}")
        object.__setattr__(self, "n_plus", int(self.n_plus))
        object.__setattr__(self, "n_minus", int(self.n_minus))


@dataclass(frozen=True)
class SpectrumEntry:
    irrep: IrrepLabel
    m: Fraction
    energy: float
    quanta: QuantaPair

    def to_dict(self, region: Region) -> dict:
        return {
            "region": str(region),
            "irrep": str(self.irrep),
            "m": str(self.m),
            "n_plus": self.quanta.n_plus,
            "n_minus": self.quanta.n_minus,
            "energy": self.energy,
        }


# --- oscillator -------------------------------------------------------------


def _osc_parts(params: NCParams, spec: OscillatorSpec):
    """Return ``(S, t)`` with ``t = theta mu^2 omega^2``."""
    mu, w, h = params.mu, spec.omega, params.hbar
    t = params.theta * mu * mu * w * w
    S = math.sqrt((params.kappa - t) ** 2 + 4 * mu * mu * w * w * h * h)
    return S, t


def oscillator_frequencies(params: NCParams, spec: OscillatorSpec) -> tuple[float, float]:
    """Normal-mode frequencies ``(Omega_plus, Omega_minus)``, ``Omega_plus >= Omega_minus``."""
    region = require_noncritical(params)
    S, t = _osc_parts(params, spec)
    k = params.kappa
    den = 2 * params.mu * params.hbar
    if region is Region.SUPER_CRITICAL:
        return (k + t + S) / den, (k + t - S) / den
    return (S + abs(k + t)) / den, (S - abs(k + t)) / den


def oscillator_level(params: NCParams, spec: OscillatorSpec, quanta: QuantaPair) -> float:
    wp, wm = oscillator_frequencies(params, spec)
    h = params.hbar
    return h * wp * (quanta.n_plus + 0.5) + h * wm * (quanta.n_minus + 0.5)


def _neg_sign(params: NCParams, t: float) -> int:
    return 1 if abs(params.kappa) - t >= 0 else -1


def oscillator_quanta(params: NCParams, spec: OscillatorSpec, irrep: IrrepLabel, m) -> QuantaPair:
    """Occupation numbers of the normal modes for the state ``|irrep, m>``."""
    region = params.region
    check_irrep_region(irrep, region)
    m = half_integer(m) if not isinstance(m, Fraction) else m
    _check_m(irrep, m)
    l = irrep.l
    if irrep.is_su2:
        j = irrep.j
        return QuantaPair(int(j + m), int(j - m))
    if region is Region.NEGATIVE_KAPPA:
        _, t = _osc_parts(params, spec)
        sg = _neg_sign(params, t)
        return QuantaPair(int(m + Fraction(sg * l, 2) - Fraction(1, 2)),
                          int(m - Fraction(sg * l, 2) - Fraction(1, 2)))
    return QuantaPair(int(m - Fraction(l, 2) - Fraction(1, 2)),
                      int(m + Fraction(l, 2) - Fraction(1, 2)))


def _check_m(irrep: IrrepLabel, m: Fraction) -> None:
    lab = irrep.label
    if irrep.is_su2:
        ok = -lab <= m <= lab and (m - lab).denominator == 1
    else:
        ok = m >= lab and (m - lab).denominator == 1
    if not ok:
        raise ValidationError(f"m={m} is not a weight of {irrep}")


def oscillator_irrep_energy(params: NCParams, spec: OscillatorSpec, irrep: IrrepLabel, m) -> float:
    """Energy of ``|irrep, m>`` from the algebraic diagonalization."""
    region = require_noncritical(params)
    check_irrep_region(irrep, region)
    m = half_integer(m) if not isinstance(m, Fraction) else m
    _check_m(irrep, m)
    S, t = _osc_parts(params, spec)
    mu, k, l = params.mu, params.kappa, irrep.l
    if region is Region.SUPER_CRITICAL:
        return float(m) / mu * S + (k + t) * (2 * float(irrep.j) + 1) / (2 * mu)
    if region is Region.NEGATIVE_KAPPA:
        return float(m) / mu * S + (abs(k) - t) * l / (2 * mu)
    return float(m) / mu * S - (k + t) * l / (2 * mu)


def oscillator_spectrum_irrep(
    params: NCParams, spec: OscillatorSpec, irrep: IrrepLabel, count: int | None = None
) -> list[SpectrumEntry]:
    """Lowest ``count`` levels carried by one irrep (all of them for ``Su2``)."""
    region = require_noncritical(params)
    check_irrep_region(irrep, region)
    out = []
    for m in irrep.m_values(count):
        out.append(
            SpectrumEntry(
                irrep, m, oscillator_irrep_energy(params, spec, irrep, m),
                oscillator_quanta(params, spec, irrep, m),
            )
        )
    return out


def oscillator_spectrum(params: NCParams, spec: OscillatorSpec, max_quanta: int) -> list[SpectrumEntry]:
    """Every state with ``n_plus + n_minus <= max_quanta``, collected irrep by irrep.

    The label range needed is ``j <= max_quanta/2`` for ``Su2`` and
    ``k <= (max_quanta + 1)/2`` for ``Sl2``; within a ``Sl2`` irrep the total
    quanta grow by two per step in ``m``.
    """
    from .irreps import admissible_irreps

    region = require_noncritical(params)
    out = []
    if region is Region.SUPER_CRITICAL:
        for irrep in admissible_irreps(region, Fraction(max_quanta, 2)):
            out.extend(oscillator_spectrum_irrep(params, spec, irrep))
        return out
    for irrep in admissible_irreps(region, Fraction(max_quanta + 1, 2)):
        # n_plus + n_minus = 2m - 1, so m <= (max_quanta + 1)/2
        count = int(Fraction(max_quanta + 1, 2) - irrep.k) + 1
        if count > 0:
            out.extend(oscillator_spectrum_irrep(params, spec, irrep, count))
    return out


# --- Landau -----------------------------------------------------------------


def _landau_strength(params: NCParams, spec: LandauSpec) -> float:
    """``4 eB hbar + (eB)^2 theta + 4 kappa``; its sign is that of the effective field."""
    eB = spec.eB
    return 4 * eB * params.hbar + eB * eB * params.theta + 4 * params.kappa


def landau_effective_field(params: NCParams, spec: LandauSpec) -> float:
    """``B_eff = B + ((eB)^2 theta + 4 kappa) / (4 e hbar)``."""
    eB = spec.eB
    return spec.B + (eB * eB * params.theta + 4 * params.kappa) / (4 * spec.e * params.hbar)


@dataclass(frozen=True)
class LandauLevel:
    n: int
    energy: float
    degeneracy: str = "countably infinite"

    def to_dict(self) -> dict:
        return {"n": self.n, "energy": self.energy, "degeneracy": self.degeneracy}


def landau_level_energy(params: NCParams, spec: LandauSpec, n: int) -> float:
    require_noncritical(params)
    if n < 0:
        raise ValidationError("level index must be >= 0")
    return abs(_landau_strength(params, spec)) / (4 * params.mu) * (n + 0.5)


def landau_spectrum(params: NCParams, spec: LandauSpec, level_count: int) -> list[LandauLevel]:
    """Levels ``E_n = |4 eB hbar + (eB)^2 theta + 4 kappa| / (4 mu) (n + 1/2)``."""
    require_noncritical(params)
    return [LandauLevel(n, landau_level_energy(params, spec, n)) for n in range(level_count)]


def landau_level_index(params: NCParams, spec: LandauSpec, irrep: IrrepLabel, m) -> int:
    """Landau level reached by ``|irrep, m>`` after the diagonalizing boost or rotation."""
    region = require_noncritical(params)
    check_irrep_region(irrep, region)
    m = half_integer(m) if not isinstance(m, Fraction) else m
    _check_m(irrep, m)
    if irrep.is_su2:
        return int(m + irrep.j)
    sign = irrep.s
    if region is Region.NEGATIVE_KAPPA:
        sign *= _effective_sign(params, spec)
    return int(m - sign * (irrep.k - Fraction(1, 2)) - Fraction(1, 2))


def _effective_sign(params: NCParams, spec: LandauSpec) -> int:
    g = _landau_strength(params, spec)
    if g == 0:
        raise ValidationError("vanishing effective magnetic field: no Landau quantization")
    return 1 if g > 0 else -1


def landau_level_in_irrep(params: NCParams, spec: LandauSpec, irrep: IrrepLabel, m) -> float:
    """Energy of ``|irrep, m>`` from the region-specific algebraic form.

    Used as a cross-check of the unified level formula.
    """
    region = require_noncritical(params)
    check_irrep_region(irrep, region)
    m = half_integer(m) if not isinstance(m, Fraction) else m
    _check_m(irrep, m)
    eB, h, th, mu = spec.eB, params.hbar, params.theta, params.mu
    if region is Region.SUPER_CRITICAL:
        g = eB * eB * th + 4 * eB * h + 4 * params.kappa
        return g / (4 * mu) * float(m + irrep.j + Fraction(1, 2))
    if region is Region.NEGATIVE_KAPPA:
        ak = abs(params.kappa)
        g = 4 * eB * h + eB * eB * th - 4 * ak
        t = _effective_sign(params, spec)
        return abs(g) / (4 * mu) * float(m - irrep.s * t * (irrep.k - Fraction(1, 2)))
    g = eB * eB * th + 4 * eB * h + 4 * params.kappa
    return g / (4 * mu) * float(m - irrep.s * (irrep.k - Fraction(1, 2)))


@dataclass(frozen=True)
class DensityOfStates:
    """State density per unit area; ``divergent`` is set at the critical point."""

    value: float
    divergent: bool = False

    def to_dict(self) -> dict:
        return {"rho": None if self.divergent else self.value, "divergent": self.divergent}


def landau_density_of_states(params: NCParams, spec: LandauSpec) -> DensityOfStates:
    """``rho = |4 eB hbar + (eB)^2 theta + 4 kappa| / (8 pi |hbar^2 - theta kappa|)``."""
    if params.region is Region.CRITICAL:
        return DensityOfStates(math.inf, True)
    den = 8 * math.pi * (params.hbar**2 - params.theta * params.kappa)
    return DensityOfStates(abs(_landau_strength(params, spec) / den))


def landau_quadratic_form(params: NCParams, spec: LandauSpec) -> tuple[float, float, float]:
    """``(a, b, c)`` with ``2 mu H_L = a P^2 + b X^2 - c L``."""
    eB, h, th, k = spec.eB, params.hbar, params.theta, params.kappa
    a = 1 + eB * th / (2 * h)
    b = eB * (eB * h + 2 * k) / (4 * h)
    c = eB * (1 - params.ratio)
    return a, b, c


def mean_square_radius(params: NCParams, spec: LandauSpec, irrep: IrrepLabel, m) -> float:
    """``<X^2>`` in the Landau eigenstate ``|irrep, m>``.

    The energy of ``a P^2 + b X^2 - c L`` on a given irrep state is
    ``a (2 m S(b/a) - (kappa + theta b/a) l) + c hbar l`` with
    ``S(beta) = sqrt((kappa - theta beta)^2 + 4 beta hbar^2)``; its derivative in
    ``b`` gives ``<X^2> = 2 m (theta (theta beta - kappa) + 2 hbar^2) / S - theta l``.
    This single expression covers all three regions and the commutative
    limit.
    """
    region = require_noncritical(params)
    check_irrep_region(irrep, region)
    m = half_integer(m) if not isinstance(m, Fraction) else m
    _check_m(irrep, m)
    a, b, _ = landau_quadratic_form(params, spec)
    g = _landau_strength(params, spec)
    if g == 0:
        raise ValidationError("vanishing effective magnetic field: no Landau quantization")
    th, k, h = params.theta, params.kappa, params.hbar
    beta = b / a
    S = abs(g) / (4 * a)
    return 2 * float(m) * (th * (th * beta - k) + 2 * h * h) / S - th * irrep.l


def radius_slope(params: NCParams, spec: LandauSpec) -> float:
    """Growth of ``<X^2>`` per unit irrep label at fixed Landau level."""
    require_noncritical(params)
    g = _landau_strength(params, spec)
    return 16 * abs(params.theta * params.kappa - params.hbar**2) / abs(g)
