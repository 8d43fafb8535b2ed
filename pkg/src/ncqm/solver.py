"""Tridiagonal Hamiltonians of central potentials inside one irrep."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import NoBoundStates, ThetaZero, ValidationError
from .irreps import IrrepLabel, check_irrep_region
from .params import NCParams, Region, require_noncritical

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
START_TRUNCATION = 64
MAX_TRUNCATION = 16384


class RadialPotential:
    """Central potential ``V(r^2)``.

    The Hamiltonian only ever samples ``V`` at ``r^2 = theta q`` for positive
    integers ``q``; :meth:`sample` receives those integers so that subclasses
    can compare on the lattice exactly.
    """

    def __init__(self, evaluator: Callable[[float], float], name: str = "custom"):
        self._evaluator = evaluator
        self.name = name

    def __call__(self, r2: float) -> float:
        return float(self._evaluator(r2))

    def sample(self, theta: float, q: np.ndarray) -> np.ndarray:
        return np.array([self(theta * float(x)) for x in q], dtype=float)


class ZeroPotential(RadialPotential):
    def __init__(self):
        super().__init__(lambda r2: 0.0, "zero")

    def sample(self, theta, q):
        return np.zeros(len(q))


class QuadraticPotential(RadialPotential):
    """``V(r^2) = c0 + c1 r^2``."""

    def __init__(self, c0: float, c1: float):
        self.c0, self.c1 = float(c0), float(c1)
        super().__init__(lambda r2: self.c0 + self.c1 * r2, "quadratic")

    def sample(self, theta, q):
        return self.c0 + self.c1 * theta * np.asarray(q, dtype=float)

    @classmethod
    def oscillator(cls, mu: float, omega: float) -> "QuadraticPotential":
        return cls(0.0, 0.5 * mu * omega * omega)


def lattice_floor(a2_over_theta: float) -> int:
    """``floor(A^2/theta)``, snapping values within 1e-9 of an integer onto it."""
    if not math.isfinite(a2_over_theta) or a2_over_theta < 0:
        raise ValidationError(f"A^2/theta must be a nonnegative number, got {a2_over_theta}")
    near = round(a2_over_theta)
    if abs(a2_over_theta - near) <= 1e-9 * max(1.0, abs(a2_over_theta)):
        return int(near)
    return int(math.floor(a2_over_theta))


class StepPotential(RadialPotential):
    """``V0`` outside the disk ``r^2 <= A^2``, zero inside (boundary counts as inside)."""

    def __init__(self, V0: float, a2_over_theta: float):
        if not (V0 > 0):
            raise ValidationError(f"V0 must be > 0, got {V0}")
        self.V0 = float(V0)
        self.a2_over_theta = float(a2_over_theta)
        self.floor = lattice_floor(a2_over_theta)
        super().__init__(self._eval, "step")

    def _eval(self, r2):
        raise ValidationError("StepPotential is evaluated on lattice indices only; use sample()")

    def sample(self, theta, q):
        q = np.asarray(q)
        return np.where(q > self.floor, self.V0, 0.0)


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    """Real symmetric tridiagonal ``H`` in the basis ``|irrep, m>``, ``m`` ascending.

    ``gauge`` is ``"none"`` or ``"(-i)^n"``: in the latter case the stored
    matrix equals ``U^dagger H U`` with ``U = diag((-i)^n)``, ``n = m - k``.
    """

    irrep: IrrepLabel
    diag: np.ndarray
    offdiag: np.ndarray
    gauge: str
    m_first: float
    lattice: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def ungauged(self) -> np.ndarray:
        """Complex Hermitian matrix before the phase similarity."""
        if self.gauge == "none":
            return self.dense().astype(complex)
        n = np.arange(self.dim)
        u = (-1j) ** n
        return u[:, None] * self.dense() * u.conj()[None, :]

    def to_ungauged_vector(self, vec: np.ndarray) -> np.ndarray:
        if self.gauge == "none":
            return vec
        return (-1j) ** np.arange(len(vec)) * vec

    def norm(self) -> float:
        return float(np.max(np.abs(self.diag)) + 2 * (np.max(np.abs(self.offdiag)) if self.dim > 1 else 0.0))

    def truncate(self, size: int) -> "TridiagonalHamiltonian":
        return TridiagonalHamiltonian(
            self.irrep, self.diag[:size].copy(), self.offdiag[: max(size - 1, 0)].copy(),
            self.gauge, self.m_first, self.lattice[:size].copy(),
        )


def build_hamiltonian(
    params: NCParams, irrep: IrrepLabel, V: RadialPotential | None = None, truncation: int | None = None
) -> TridiagonalHamiltonian:
    """Matrix of ``P^2/(2 mu) + V(X^2)`` in the irrep's weight basis.

    ``Sl2``: rows ``m = k, ..., k + truncation - 1``, potential sampled at
    ``theta (2m - l)``. ``Su2``: all ``2j+1`` rows, potential sampled at
    ``theta (2m + 2j + 1)``.
    """
    if params.theta == 0:
        raise ThetaZero("theta = 0 has no radial lattice")
    region = require_noncritical(params)
    check_irrep_region(irrep, region)
    V = V or ZeroPotential()
    th, h, mu, ka = params.theta, params.hbar, params.mu, params.kappa
    b = math.sqrt(abs(1.0 - params.ratio))
    lin = 4 * h * h / th - 2 * ka
    hop = 2 * h * h / th * b
    if irrep.is_su2:
        two_j = int(2 * irrep.j)
        size = two_j + 1
        n = np.arange(size, dtype=float)
        m = n - irrep.j.__float__()
        q = np.arange(size) * 2 + 1
        diag = lin * m + ka * (two_j + 1)
        off = -hop * np.sqrt((n[:-1] + 1) * (two_j - n[:-1]))
        m_first = -float(irrep.j)
        gauge = "none"
    else:
        if truncation is None or truncation < 1:
            raise ValidationError("sl2 irreps need a truncation >= 1")
        two_k = int(2 * irrep.k)
        n = np.arange(truncation, dtype=float)
        m = n + float(irrep.k)
        q = two_k + 2 * np.arange(truncation) - irrep.l
        diag = lin * m - ka * irrep.l
        off = -hop * np.sqrt((n[:-1] + 1) * (two_k + n[:-1]))
        m_first = float(irrep.k)
        gauge = "(-i)^n" if region is Region.NEGATIVE_KAPPA else "none"
    diag = diag + 2 * mu * V.sample(th, q)
    return TridiagonalHamiltonian(irrep, diag / (2 * mu), off / (2 * mu), gauge, m_first, q)


@dataclass
class SpectrumResult:
    irrep: IrrepLabel
    eigenvalues: np.ndarray
    vectors: np.ndarray | None
    truncation: int
    converged: np.ndarray
    threshold: np.ndarray | None = None

    def to_dict(self) -> dict:
        out = {
            "irrep": self.irrep.to_dict(),
            "truncation": self.truncation,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "converged": [bool(x) for x in self.converged],
        }
        if self.threshold is not None:
            out["threshold"] = [bool(x) for x in self.threshold]
        return out


def _eig(tri: TridiagonalHamiltonian, count: int | None, vectors: bool):
    if tri.dim == 1:
        vals = tri.diag.copy()
        return vals, (np.ones((1, 1)) if vectors else None)
    kw = {}
    if count is not None and count < tri.dim:
        kw = {"select": "i", "select_range": (0, count - 1)}
    if vectors:
        return eigh_tridiagonal(tri.diag, tri.offdiag, **kw)
    return eigh_tridiagonal(tri.diag, tri.offdiag, eigvals_only=True, **kw), None


def eigensolve(tri: TridiagonalHamiltonian, count: int | None = None) -> SpectrumResult:
    """All (or the lowest ``count``) eigenpairs, ascending, unit-norm vectors."""
    if tri.dim < 1:
        raise ValidationError("empty matrix")
    vals, vecs = _eig(tri, count, True)
    return SpectrumResult(tri.irrep, vals, vecs, tri.dim, np.ones(len(vals), dtype=bool))


def solve_converged(
    params: NCParams,
    irrep: IrrepLabel,
    V: RadialPotential | None,
    want: int,
    tol: float = DEFAULT_TOL,
    start: int = START_TRUNCATION,
    ceiling: int = MAX_TRUNCATION,
) -> SpectrumResult:
    """Lowest ``want`` levels, doubling the truncation until they settle.

    A level counts as converged once it moves by less than
    ``tol * max(1, |E|)`` between successive truncations. Su2 irreps are
    finite and are solved exactly.
    """
    if want < 1:
        raise ValidationError("want must be >= 1")
    if irrep.is_su2:
        res = eigensolve(build_hamiltonian(params, irrep, V))
        return _mark_threshold(res, V, tol)
    size = max(start, want + 1)
    full = build_hamiltonian(params, irrep, V, ceiling)
    prev = None
    converged = np.zeros(want, dtype=bool)
    while True:
        vals, _ = _eig(full.truncate(size), want, False)
        if prev is not None:
            converged = np.abs(vals - prev) < tol * np.maximum(1.0, np.abs(vals))
            if converged.all() or size >= ceiling:
                break
        prev = vals
        if size >= ceiling:
            break
        size = min(2 * size, ceiling)
    log.debug("irrep %s settled at truncation %d (%d/%d converged)", irrep, size, converged.sum(), want)
    if not converged.any():
        raise NoBoundStates(f"none of the lowest {want} levels of {irrep} converged up to truncation {size}")
    vals, vecs = _eig(full.truncate(size), want, True)
    res = SpectrumResult(irrep, vals, vecs, size, converged)
    return _mark_threshold(res, V, tol)


def _mark_threshold(res: SpectrumResult, V, tol: float) -> SpectrumResult:
    if isinstance(V, StepPotential):
        res.threshold = np.abs(res.eigenvalues - V.V0) < 10 * tol
    return res
