"""Noncommutativity parameters, region classification and Bopp matrices.

The phase-space variables ``xi = (X1, X2, P1, P2)`` obey
``[X1, X2] = i theta``, ``[Xi, Pj] = i hbar delta_ij`` and ``[P1, P2] = i kappa``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import CriticalRegion, ValidationError

# i*sigma_2
J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
I2 = np.eye(2)

STANDARD_FORM = np.block([[np.zeros((2, 2)), I2], [-I2, np.zeros((2, 2))]])


class Region(enum.Enum):
    NEGATIVE_KAPPA = "NegativeKappa"
    ZERO_KAPPA = "ZeroKappa"
    SUB_CRITICAL = "SubCritical"
    CRITICAL = "Critical"
    SUPER_CRITICAL = "SuperCritical"

    @property
    def is_su2(self) -> bool:
        return self is Region.SUPER_CRITICAL

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class NCParams:
    """Physical constants of the deformed algebra.

    Parameters
    ----------
    theta : float
        Coordinate noncommutativity, ``theta >= 0``.
    kappa : float
        Momentum noncommutativity, any real value.
    hbar, mu : float
        Action quantum and mass, both strictly positive.
    """

    theta: float
    kappa: float
    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        for name in ("theta", "kappa", "hbar", "mu"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValidationError(f"{name} must be finite, got {v!r}")
        if self.theta < 0:
            raise ValidationError(f"theta must be >= 0, got {self.theta}")
        if self.hbar <= 0:
            raise ValidationError(f"hbar must be > 0, got {self.hbar}")
        if self.mu <= 0:
            raise ValidationError(f"mu must be > 0, got {self.mu}")

    @property
    def kappa_c(self) -> float:
        if self.theta == 0:
            raise ValidationError("kappa_c undefined for theta = 0")
        return self.hbar**2 / self.theta

    @property
    def ratio(self) -> float:
        """kappa * theta / hbar**2."""
        return self.kappa * self.theta / self.hbar**2

    @property
    def region(self) -> Region:
        return classify_region(self)


def classify_region(params: NCParams) -> Region:
    k = params.kappa
    if k < 0:
        return Region.NEGATIVE_KAPPA
    if k == 0:
        return Region.ZERO_KAPPA
    prod = k * params.theta
    h2 = params.hbar * params.hbar
    if prod < h2:
        return Region.SUB_CRITICAL
    if prod == h2:
        return Region.CRITICAL
    return Region.SUPER_CRITICAL


def require_noncritical(params: NCParams) -> Region:
    region = classify_region(params)
    if region is Region.CRITICAL:
        raise CriticalRegion(
            f"kappa*theta == hbar^2 (theta={params.theta}, kappa={params.kappa})"
        )
    return region


def commutator_matrix(params: NCParams) -> tuple[np.ndarray, float]:
    """Return ``G_hat`` with ``[xi_a, xi_b] = i hbar G_hat[a, b]`` and ``det([xi, xi])``."""
    h = params.hbar
    g = np.block([[params.theta / h * J2, I2], [-I2, params.kappa / h * J2]])
    det = (1.0 - params.ratio) ** 2 * h**4
    return g, det


def _shift_block(scale: float, params: NCParams) -> np.ndarray:
    h = params.hbar
    return np.block(
        [
            [scale * I2, -params.theta / (2 * h * scale) * J2],
            [params.kappa / (2 * h * scale) * J2, scale * I2],
        ]
    )


def bopp_matrix(params: NCParams) -> np.ndarray:
    """Real 4x4 ``M`` with ``M G M^T = G_hat``; ``xi = M (x1, x2, p1, p2)``.

    Below the critical value this is the symmetric shift with
    ``lambda**2 = (1 + sqrt(1 - r)) / 2``. Above it the shift is preceded by
    an exchange of ``X2`` and ``P1``.
    """
    region = require_noncritical(params)
    r = params.ratio
    if region is not Region.SUPER_CRITICAL:
        lam = math.sqrt(0.5 * (1.0 + math.sqrt(1.0 - r)))
        return _shift_block(lam, params)
    th, ka = params.theta, params.kappa
    c = np.zeros((4, 4))
    c[0, 0] = 1.0
    c[1, 2] = math.sqrt(th / ka)
    c[2, 1] = math.sqrt(ka / th)
    c[3, 3] = 1.0
    gamma = math.sqrt(r / 2.0) * math.sqrt(1.0 + math.sqrt(1.0 - 1.0 / r))
    d = _shift_block(gamma, params)
    return r ** (-0.25) * c @ d
