"""Admissible unitary irreps, their generator matrices, and boosts/rotations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .errors import DegenerateAxis, IrrepRegionMismatch, NotBoostable, ValidationError
from .params import Region


def half_integer(value) -> Fraction:
    """Parse ``value`` as a nonnegative multiple of 1/2.

    Accepts ``Fraction``, ints, floats that are exact half-integers, and
    strings such as ``"3/2"``, ``"1"`` or ``"0.5"``.
    """
    if isinstance(value, Fraction):
        f = value
    elif isinstance(value, str):
        try:
            f = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a half-integer: {value!r}") from exc
    elif isinstance(value, float):
        f = Fraction(value)
    else:
        f = Fraction(int(value))
    if (2 * f).denominator != 1:
        raise ValidationError(f"not a half-integer: {value!r}")
    return f


def format_half(f: Fraction) -> str:
    """``"1/2"``, ``"1"``, ``"3/2"``: the reduced fraction."""
    return str(Fraction(f))


@dataclass(frozen=True, order=True)
class IrrepLabel:
    """``Su2(j)`` with ``l = -(2j+1)`` or ``Sl2(k, s)`` with ``l = s(2k-1)``."""

    family: str
    label: Fraction
    s: int = 1

    def __post_init__(self):
        lab = half_integer(self.label)
        object.__setattr__(self, "label", lab)
        if self.family == "su2":
            if lab < 0:
                raise ValidationError("j must be >= 0")
            object.__setattr__(self, "s", -1)
        elif self.family == "sl2":
            if lab <= 0:
                raise ValidationError("k must be > 0")
            if self.s not in (1, -1):
                raise ValidationError("s must be +1 or -1")
            if lab == Fraction(1, 2):
                object.__setattr__(self, "s", 1)
        else:
            raise ValidationError(f"unknown family {self.family!r}")

    @classmethod
    def su2(cls, j) -> "IrrepLabel":
        return cls("su2", half_integer(j))

    @classmethod
    def sl2(cls, k, s: int = 1) -> "IrrepLabel":
        return cls("sl2", half_integer(k), s)

    @property
    def is_su2(self) -> bool:
        return self.family == "su2"

    @property
    def j(self) -> Fraction:
        return self.label

    @property
    def k(self) -> Fraction:
        return self.label

    @property
    def l(self) -> int:
        if self.is_su2:
            return -int(2 * self.label + 1)
        return self.s * int(2 * self.label - 1)

    @property
    def casimir(self) -> Fraction:
        """``j(j+1)`` or ``k(k-1)``."""
        lab = self.label
        return lab * (lab + 1) if self.is_su2 else lab * (lab - 1)

    def m_values(self, count: int | None = None) -> list[Fraction]:
        if self.is_su2:
            j = self.label
            return [-j + i for i in range(int(2 * j) + 1)]
        if count is None:
            raise ValidationError("sl2 irreps need an explicit count")
        return [self.label + i for i in range(count)]

    def to_dict(self) -> dict:
        key = "j" if self.is_su2 else "k"
        return {"family": self.family, key: format_half(self.label), "l": self.l}

    @classmethod
    def from_dict(cls, d: dict) -> "IrrepLabel":
        if d["family"] == "su2":
            return cls.su2(d["j"])
        lab = half_integer(d["k"])
        l = int(d["l"])
        return cls.sl2(lab, 1 if l >= 0 else -1)

    def __str__(self) -> str:
        key = "j" if self.is_su2 else "k"
        return f"<{key}={format_half(self.label)}, l={self.l}>"


def check_irrep_region(irrep: IrrepLabel, region: Region) -> None:
    if region is Region.CRITICAL:
        from .errors import CriticalRegion

        raise CriticalRegion("no irreps at the critical point")
    if irrep.is_su2 != (region is Region.SUPER_CRITICAL):
        raise IrrepRegionMismatch(f"{irrep} is not admissible in region {region}")


def admissible_irreps(region: Region, max_label) -> list[IrrepLabel]:
    """All admissible labels up to ``max_label`` in ascending order."""
    if region is Region.CRITICAL:
        from .errors import CriticalRegion

        raise CriticalRegion("no irreps at the critical point")
    top = Fraction(max_label).limit_denominator(2) if not isinstance(max_label, Fraction) else max_label
    out = []
    if region is Region.SUPER_CRITICAL:
        j = Fraction(0)
        while j <= top:
            out.append(IrrepLabel.su2(j))
            j += Fraction(1, 2)
        return out
    k = Fraction(1, 2)
    while k <= top:
        out.append(IrrepLabel.sl2(k, 1))
        if k != Fraction(1, 2):
            out.append(IrrepLabel.sl2(k, -1))
        k += Fraction(1, 2)
    return out


@dataclass(frozen=True)
class GeneratorMatrices:
    diag: np.ndarray
    raise_: np.ndarray
    compact: bool

    @property
    def dimension(self) -> int:
        return len(self.diag)

    def dense(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(G0, G+, G-)`` as dense matrices (``G+`` raises ``m``)."""
        g0 = np.diag(self.diag).astype(complex)
        gp = np.diag(self.raise_, -1).astype(complex)
        return g0, gp, gp.conj().T

    def cartesian(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(G0, G1, G2)`` with ``G+- = G1 +- i G2``."""
        g0, gp, gm = self.dense()
        return g0, 0.5 * (gp + gm), (gp - gm) / 2j


def generator_matrices(irrep: IrrepLabel, truncation: int | None = None) -> GeneratorMatrices:
    if irrep.is_su2:
        j = float(irrep.j)
        m = np.array([float(v) for v in irrep.m_values()])
        rs = np.sqrt((j - m[:-1]) * (j + m[:-1] + 1))
        return GeneratorMatrices(m, rs, True)
    if truncation is None or truncation < 2:
        raise ValidationError("sl2 generator matrices need truncation >= 2")
    k = float(irrep.k)
    m = k + np.arange(truncation, dtype=float)
    rs = np.sqrt((m[:-1] - k + 1) * (m[:-1] + k))
    return GeneratorMatrices(m, rs, False)


def sl2_boost_angle(A: float, B: float) -> float:
    """``alpha`` with ``tanh(alpha) = B/A``.

    Conjugating ``A G0 + B G1`` by ``exp(i alpha G2)`` leaves
    ``A sqrt(1 - B^2/A^2) G0``.
    """
    if abs(B) >= abs(A):
        raise NotBoostable(f"|B| >= |A| (A={A}, B={B})")
    return math.atanh(B / A)


def su2_rotation_angle(A: float, B: float) -> float:
    """``phi = arctan(B/A)``; rotates ``A J3 + B J1`` onto ``A sqrt(1 + B^2/A^2) J3``."""
    if A == 0:
        raise DegenerateAxis("A = 0")
    return math.atan(B / A)


def conjugate(gen: np.ndarray, angle: float, op: np.ndarray) -> np.ndarray:
    """``exp(i angle gen) op exp(-i angle gen)``."""
    u = expm(1j * angle * gen)
    return u @ op @ u.conj().T


def boost_residual(A: float, B: float, irrep: IrrepLabel | None = None, truncation: int = 40, block: int = 10) -> float:
    """Max deviation of the boosted ``A G0 + B G1`` from its diagonal image.

    The exponential of a truncated sl(2,R) generator is only faithful far
    from the truncation edge, so the comparison uses the leading ``block``.
    """
    irrep = irrep or IrrepLabel.sl2(Fraction(1, 2))
    g0, g1, g2 = generator_matrices(irrep, truncation).cartesian()
    out = conjugate(g2, sl2_boost_angle(A, B), A * g0 + B * g1)
    target = A * math.sqrt(1 - (B / A) ** 2) * g0
    return float(np.abs(out - target)[:block, :block].max())


def rotation_residual(A: float, B: float, irrep: IrrepLabel) -> float:
    g0, g1, g2 = generator_matrices(irrep).cartesian()
    out = conjugate(g2, su2_rotation_angle(A, B), A * g0 + B * g1)
    return float(np.abs(out - A * math.sqrt(1 + (B / A) ** 2) * g0).max())
