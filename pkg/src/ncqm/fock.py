"""Truncated two-mode Fock realization of the deformed algebra.

Ordinary canonical pairs ``(x_i, p_i)`` are built from ladder matrices and
mapped to ``xi = (X1, X2, P1, P2)`` with the Bopp matrix.  Every operator
expression is evaluated in a padded space (``cutoff + PAD`` levels per mode)
and only then cropped, so products up to eighth order in the variables are
exact on the reported block.  Identities are asserted on the interior
(occupations ``<= cutoff - 2`` in each mode).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .errors import CutoffTooSmall, NonHermitianInput, ZeroKappaGenerators
from .params import NCParams, Region, bopp_matrix, require_noncritical

PAD = 4
EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])  # epsilon_ij, eps_12 = +1


def _ladder(n: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, n, dtype=float)), 1, format="csr")


def comm(a, b):
    return a @ b - b @ a


@dataclass(frozen=True, eq=False)
class FockRealization:
    """Matrices of ``X1, X2, P1, P2`` on ``cutoff**2`` two-mode Fock states.

    Attributes ending in ``_full`` live in the padded space; use :meth:`crop`
    or the ``X1`` ... ``P2`` properties for the reported block.
    """

    params: NCParams
    cutoff: int
    scale: float
    xi_full: tuple = field(repr=False)
    bopp: np.ndarray = field(repr=False)

    @property
    def npad(self) -> int:
        return self.cutoff + PAD

    @property
    def dim(self) -> int:
        return self.cutoff**2

    @property
    def interior_dim(self) -> int:
        return (self.cutoff - 1) ** 2

    def _indices(self, limit: int) -> np.ndarray:
        n1, n2 = np.divmod(np.arange(self.npad**2), self.npad)
        return np.flatnonzero((n1 < limit) & (n2 < limit))

    @property
    def kept(self) -> np.ndarray:
        return self._indices(self.cutoff)

    @property
    def inner(self) -> np.ndarray:
        return self._indices(self.cutoff - 1)

    @property
    def inner_in_kept(self) -> np.ndarray:
        """Positions of interior states inside the cropped basis."""
        n1, n2 = np.divmod(np.arange(self.dim), self.cutoff)
        return np.flatnonzero((n1 <= self.cutoff - 2) & (n2 <= self.cutoff - 2))

    def crop(self, op) -> np.ndarray:
        idx = self.kept
        return _dense(op[idx][:, idx])

    def interior_block(self, op) -> np.ndarray:
        idx = self.inner
        return _dense(op[idx][:, idx])

    def residual(self, op) -> float:
        """Max-norm of ``op`` projected onto the interior."""
        block = self.interior_block(op)
        return float(np.abs(block).max()) if block.size else 0.0

    def identity(self):
        return sp.identity(self.npad**2, dtype=complex, format="csr")

    X1 = property(lambda self: self.crop(self.xi_full[0]))
    X2 = property(lambda self: self.crop(self.xi_full[1]))
    P1 = property(lambda self: self.crop(self.xi_full[2]))
    P2 = property(lambda self: self.crop(self.xi_full[3]))

    @property
    def X(self):
        return self.xi_full[:2]

    @property
    def P(self):
        return self.xi_full[2:]


def _dense(m) -> np.ndarray:
    return m.toarray() if sp.issparse(m) else np.asarray(m)


def build_realization(params: NCParams, cutoff: int, scale: float = 1.0) -> FockRealization:
    """Realize the deformed algebra on a truncated Fock space.

    Parameters
    ----------
    params : NCParams
        Must not be critical.
    cutoff : int
        Occupation levels kept per mode (``>= 6``).
    scale : float, optional
        Length scale of the reference oscillator: ``x = scale*sqrt(hbar/2)(a + a^+)``.
    """
    require_noncritical(params)
    if int(cutoff) != cutoff or cutoff < 6:
        raise CutoffTooSmall(f"cutoff must be an integer >= 6, got {cutoff}")
    cutoff = int(cutoff)
    n = cutoff + PAD
    a = _ladder(n)
    eye = sp.identity(n, format="csr")
    c = math.sqrt(params.hbar / 2.0)
    x = (c * scale * (a + a.T)).astype(complex)
    p = (1j * c / scale * (a.T - a)).astype(complex)
    canon = [sp.kron(x, eye, "csr"), sp.kron(eye, x, "csr"), sp.kron(p, eye, "csr"), sp.kron(eye, p, "csr")]
    m = bopp_matrix(params)
    xi = tuple(
        sum((m[r, s] * canon[s] for s in range(4) if m[r, s] != 0.0), sp.csr_matrix(canon[0].shape, dtype=complex))
        for r in range(4)
    )
    return FockRealization(params, cutoff, float(scale), xi, m)


# -- quadratic invariants -------------------------------------------------


def x_squared(real: FockRealization):
    x1, x2 = real.X
    return x1 @ x1 + x2 @ x2


def p_squared(real: FockRealization):
    p1, p2 = real.P
    return p1 @ p1 + p2 @ p2


def dilation(real: FockRealization):
    """``X.P + P.X``."""
    x1, x2 = real.X
    p1, p2 = real.P
    return x1 @ p1 + p1 @ x1 + x2 @ p2 + p2 @ x2


def rotation_generator(real: FockRealization):
    pr = real.params
    x1, x2 = real.X
    p1, p2 = real.P
    body = x1 @ p2 - x2 @ p1 + pr.theta / (2 * pr.hbar) * p_squared(real) + pr.kappa / (2 * pr.hbar) * x_squared(real)
    return body / (1.0 - pr.ratio)


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Padded-space generator matrices; ``G*`` are ``None`` at kappa = 0."""

    L: object
    K1: object
    K2: object
    M1: object
    M2: object
    G0: object = None
    Gplus: object = None
    Gminus: object = None
    compact: bool = False  # True for su(2)


def lie_generators(real: FockRealization):
    """Region-appropriate ``(G0, G+, G-, compact)``."""
    pr = real.params
    region = pr.region
    th, ka, h = pr.theta, pr.kappa, pr.hbar
    if region is Region.ZERO_KAPPA:
        raise ZeroKappaGenerators("sl(2,R) generators divide by kappa")
    x2, p2, d, L = x_squared(real), p_squared(real), dilation(real), rotation_generator(real)
    if region is Region.NEGATIVE_KAPPA:
        ak = abs(ka)
        g0 = (p2 / ak + x2 / th) / (4 * math.sqrt(1 + h * h / (th * ak)))
        g1 = d / (4 * h * math.sqrt(1 + th * ak / h**2))
        g2 = math.sqrt(th * ak) / h / 4 * (-p2 / ak + x2 / th + 2 * L / h)
        return g0, g1 + 1j * g2, g1 - 1j * g2, False
    r = th * ka / h**2
    g0 = math.sqrt(r) / 4 * (p2 / ka + x2 / th + 2 * L / h)
    pref = 1.0 / (4 * math.sqrt(abs(1.0 / r - 1.0)))
    base = -p2 / ka + x2 / th
    gp = pref * (base - 1j / math.sqrt(th * ka) * d)
    gm = pref * (base + 1j / math.sqrt(th * ka) * d)
    return g0, gp, gm, region is Region.SUPER_CRITICAL


def build_generators(real: FockRealization) -> GeneratorSet:
    pr = real.params
    th, ka, h = pr.theta, pr.kappa, pr.hbar
    x1, x2 = real.X
    p1, p2 = real.P
    den = 1.0 - pr.ratio
    k1 = (p1 - ka / h * x2) / den
    k2 = (p2 + ka / h * x1) / den
    m1 = -(x1 + th / h * p2) / den
    m2 = -(x2 - th / h * p1) / den
    L = rotation_generator(real)
    if pr.region is Region.ZERO_KAPPA:
        return GeneratorSet(L, k1, k2, m1, m2)
    g0, gp, gm, compact = lie_generators(real)
    return GeneratorSet(L, k1, k2, m1, m2, g0, gp, gm, compact)


# -- discrete transformations ---------------------------------------------


def _stated_time_reversal_map(params: NCParams) -> np.ndarray:
    """4x4 map ``R`` with ``T xi T^+ = R xi`` for the parameter region."""
    th, ka, h = params.theta, params.kappa, params.hbar
    if params.region is Region.SUPER_CRITICAL:
        c = 1.0 / math.sqrt(1.0 - h * h / (th * ka))
        return c * np.array(
            [
                [1.0, 0.0, 0.0, h / ka],
                [0.0, -1.0, h / ka, 0.0],
                [0.0, -h / th, 1.0, 0.0],
                [-h / th, 0.0, 0.0, -1.0],
            ]
        )
    c = 1.0 / math.sqrt(1.0 - params.ratio)
    return c * np.block([[np.eye(2), th / h * EPS], [ka / h * EPS, -np.eye(2)]])


PARITY_SIGNS = np.diag([1.0, -1.0, -1.0, 1.0])


@dataclass(frozen=True, eq=False)
class DiscreteTransform:
    """A concrete T or P acting on padded-space operators.

    ``T`` is entrywise complex conjugation in the Fock basis (``x`` real,
    ``p`` imaginary); ``P`` is conjugation by the mode-2 parity
    ``diag((-1)**n2)``.  ``linear_map`` is the 4x4 matrix expressing the
    transformed variables through the untransformed ones.
    """

    kind: str
    antilinear: bool
    linear_map: np.ndarray
    _sign: object = field(repr=False, default=None)

    def apply(self, op):
        if self.antilinear:
            return op.conj()
        return self._sign @ op @ self._sign

    def variables(self, real: FockRealization) -> tuple:
        return tuple(self.apply(v) for v in real.xi_full)


def discrete_transform(real: FockRealization, kind: str) -> DiscreteTransform:
    kind = kind.upper()
    rt = _stated_time_reversal_map(real.params)
    if kind == "T":
        return DiscreteTransform("T", True, rt)
    if kind == "P":
        n = real.npad
        sign = sp.diags(np.tile((-1.0) ** np.arange(n), n).astype(complex), format="csr")
        return DiscreteTransform("P", False, PARITY_SIGNS @ rt, sign)
    raise ValueError(f"kind must be 'T' or 'P', got {kind!r}")


# -- Hamiltonians ---------------------------------------------------------


def quadratic_hamiltonian(real: FockRealization, *, p2=0.0, x2=0.0, dil=0.0, l=0.0, const=0.0):
    """``p2*P^2 + x2*X^2 + dil*(X.P + P.X) + l*L + const`` in the padded space."""
    h = const * real.identity()
    for coef, build in ((p2, p_squared), (x2, x_squared), (dil, dilation), (l, rotation_generator)):
        if coef:
            h = h + coef * build(real)
    return h


def _form(params: NCParams, p2, x2, dil, l) -> np.ndarray:
    """Symmetric 4x4 coefficient matrix of the quadratic form in ``xi``."""
    th, ka, h = params.theta, params.kappa, params.hbar
    f = np.zeros((4, 4))
    f[:2, :2] += x2 * np.eye(2)
    f[2:, 2:] += p2 * np.eye(2)
    f[0, 2] = f[2, 0] = f[1, 3] = f[3, 1] = dil
    ang = np.zeros((4, 4))
    ang[0, 3] = ang[3, 0] = 0.5
    ang[1, 2] = ang[2, 1] = -0.5
    ang[:2, :2] += ka / (2 * h) * np.eye(2)
    ang[2:, 2:] += th / (2 * h) * np.eye(2)
    return f + l / (1.0 - params.ratio) * ang


def matched_scale(params: NCParams, *, p2=0.0, x2=0.0, dil=0.0, l=0.0) -> float:
    """Reference length making ``alpha p^2 + beta x^2`` number conserving.

    The form is pulled back to canonical variables through the Bopp matrix;
    for rotation-invariant forms the truncated problem then splits into
    complete shells of fixed total occupation.
    """
    m = bopp_matrix(params)
    c = m.T @ _form(params, p2, x2, dil, l) @ m
    alpha, beta = c[2, 2], c[0, 0]
    if alpha <= 0 or beta <= 0:
        return 1.0
    return float((alpha / beta) ** 0.25)


def oscillator_coefficients(params: NCParams, omega: float) -> dict:
    return dict(p2=0.5 / params.mu, x2=0.5 * params.mu * omega**2)


def landau_coefficients(params: NCParams, eB: float) -> dict:
    """Quadratic-invariant form of the Landau Hamiltonian."""
    th, ka, h, mu = params.theta, params.kappa, params.hbar, params.mu
    return dict(
        p2=(1 + eB * th / (2 * h)) / (2 * mu),
        x2=eB / (4 * h) * (eB * h + 2 * ka) / (2 * mu),
        l=-eB * (1 - params.ratio) / (2 * mu),
    )


def oscillator_operator(real: FockRealization, omega: float):
    pr = real.params
    return quadratic_hamiltonian(real, p2=0.5 / pr.mu, x2=0.5 * pr.mu * omega**2)


def landau_operator(real: FockRealization, eB: float):
    """``((P1 + eB/2 X2)^2 + (P2 - eB/2 X1)^2) / 2mu`` built from the variables."""
    x1, x2 = real.X
    p1, p2 = real.P
    a = p1 + 0.5 * eB * x2
    b = p2 - 0.5 * eB * x1
    return (a @ a + b @ b) / (2 * real.params.mu)


@dataclass(frozen=True)
class OracleSpectrum:
    eigenvalues: np.ndarray
    converged: np.ndarray
    interior_weight: np.ndarray

    @property
    def converged_values(self) -> np.ndarray:
        return self.eigenvalues[self.converged]


def diagonalize_hamiltonian(real: FockRealization, H, weight_min: float = 0.999) -> OracleSpectrum:
    """Dense eigensolve of the cropped Hamiltonian.

    ``H`` is a padded-space operator, a cropped dense matrix, or a callable
    ``real -> operator``.
    """
    if callable(H):
        H = H(real)
    m = _dense(H)
    if m.shape[0] != real.dim:
        m = real.crop(H)
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m - m.conj().T).max() > 1e-10 * scale:
        raise NonHermitianInput("Hamiltonian is not Hermitian to 1e-10")
    vals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    weight = np.sum(np.abs(vecs[real.inner_in_kept, :]) ** 2, axis=0)
    return OracleSpectrum(vals, weight >= weight_min, weight)


# -- residual reports -----------------------------------------------------

ALGEBRA_TOL = 1e-10
CASIMIR_TOL = 1e-9
INVOLUTION_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    check: str
    region: str
    cutoff: int
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tolerance)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "region": self.region,
            "cutoff": self.cutoff,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


class _Reporter:
    def __init__(self, real: FockRealization):
        self.real = real
        self.out: list[CheckResult] = []

    def add(self, name, op, tol):
        self.out.append(
            CheckResult(name, str(self.real.params.region), self.real.cutoff, self.real.residual(op), tol)
        )


def _canonical_residuals(rep, xs, ps, sign, prefix):
    pr = rep.real.params
    eye = rep.real.identity()
    rep.add(f"{prefix}[X1,X2]", comm(xs[0], xs[1]) - sign * 1j * pr.theta * eye, ALGEBRA_TOL)
    rep.add(f"{prefix}[P1,P2]", comm(ps[0], ps[1]) - sign * 1j * pr.kappa * eye, ALGEBRA_TOL)
    worst = max(
        rep.real.residual(comm(xs[i], ps[j]) - (sign * 1j * pr.hbar * eye if i == j else 0))
        for i in range(2)
        for j in range(2)
    )
    rep.out.append(CheckResult(f"{prefix}[Xi,Pj]", str(pr.region), rep.real.cutoff, worst, ALGEBRA_TOL))


def algebra_residuals(real: FockRealization) -> list[CheckResult]:
    """Canonical relations, vector rule for L and the translation algebras."""
    rep = _Reporter(real)
    pr = real.params
    h, eye = pr.hbar, real.identity()
    _canonical_residuals(rep, real.X, real.P, 1.0, "")
    g = build_generators(real)
    den = 1.0 - pr.ratio
    for name, vec in (("X", real.X), ("P", real.P)):
        rep.add(f"[L,{name}1]", comm(g.L, vec[0]) - 1j * h * vec[1], ALGEBRA_TOL)
        rep.add(f"[L,{name}2]", comm(g.L, vec[1]) + 1j * h * vec[0], ALGEBRA_TOL)
    ks, ms = (g.K1, g.K2), (g.M1, g.M2)
    kx = max(real.residual(comm(ks[i], real.X[j]) + (1j * h * eye if i == j else 0)) for i in range(2) for j in range(2))
    kp = max(real.residual(comm(ks[i], real.P[j])) for i in range(2) for j in range(2))
    mx = max(real.residual(comm(ms[i], real.X[j])) for i in range(2) for j in range(2))
    mp = max(real.residual(comm(ms[i], real.P[j]) + (1j * h * eye if i == j else 0)) for i in range(2) for j in range(2))
    for name, val in (("[Ki,Xj]", kx), ("[Ki,Pj]", kp), ("[Mi,Xj]", mx), ("[Mi,Pj]", mp)):
        rep.out.append(CheckResult(name, str(pr.region), real.cutoff, val, ALGEBRA_TOL))
    rep.add("[K1,K2]", comm(g.K1, g.K2) + 1j * pr.kappa / den * eye, ALGEBRA_TOL)
    rep.add("[M1,M2]", comm(g.M1, g.M2) + 1j * pr.theta / den * eye, ALGEBRA_TOL)
    for name, v in (("K", ks), ("M", ms)):
        rep.add(f"[L,{name}1]", comm(g.L, v[0]) - 1j * h * v[1], ALGEBRA_TOL)
        rep.add(f"[L,{name}2]", comm(g.L, v[1]) + 1j * h * v[0], ALGEBRA_TOL)
    if g.G0 is not None:
        rep.add("[G0,G+]", comm(g.G0, g.Gplus) - g.Gplus, ALGEBRA_TOL)
        rep.add("[G0,G-]", comm(g.G0, g.Gminus) + g.Gminus, ALGEBRA_TOL)
        rep.add("[G+,G-]", comm(g.Gplus, g.Gminus) - (2.0 if g.compact else -2.0) * g.G0, ALGEBRA_TOL)
        rep.add("[L,G0]", comm(g.L, g.G0), ALGEBRA_TOL)
        rep.add("G+ = G-^dagger", g.Gplus - g.Gminus.conj().T, INVOLUTION_TOL)
    return rep.out


def casimir_operator(g: GeneratorSet, eye):
    if g.compact:
        return g.Gplus @ g.Gminus + g.G0 @ (g.G0 - eye)
    return g.G0 @ (g.G0 - eye) - g.Gplus @ g.Gminus


def casimir_residual(real: FockRealization, generators: GeneratorSet | None = None) -> float:
    """Interior max-norm of ``4 C - (L/hbar)^2 + 1``."""
    g = generators or build_generators(real)
    if g.G0 is None:
        raise ZeroKappaGenerators("sl(2,R) generators divide by kappa")
    eye = real.identity()
    lh = g.L / real.params.hbar
    return real.residual(4 * casimir_operator(g, eye) - lh @ lh + eye)


def discrete_residuals(real: FockRealization) -> list[CheckResult]:
    """Transformed algebra, quadratic-form rules, PT and involution checks."""
    rep = _Reporter(real)
    pr = real.params
    th, ka, h = pr.theta, pr.kappa, pr.hbar
    tt, pp = discrete_transform(real, "T"), discrete_transform(real, "P")
    xi = real.xi_full
    L, X2, P2, D = rotation_generator(real), x_squared(real), p_squared(real), dilation(real)
    for tr, sign in ((tt, -1.0), (pp, 1.0)):
        v = tr.variables(real)
        # the concrete matrix map agrees with the closed-form variables
        lin = max(
            real.residual(v[r] - sum(tr.linear_map[r, s] * xi[s] for s in range(4))) for r in range(4)
        )
        rep.out.append(CheckResult(f"{tr.kind}: variables", str(pr.region), real.cutoff, lin, ALGEBRA_TOL))
        _canonical_residuals(rep, v[:2], v[2:], sign, f"{tr.kind}: ")
    if pr.region is Region.SUPER_CRITICAL:
        rules = {
            "L": (L, L, L),
            "X^2": (X2, -th / ka * P2 - 2 * th / h * L, -th / ka * P2 - 2 * th / h * L),
            "P^2": (P2, -ka / th * X2 - 2 * ka / h * L, -ka / th * X2 - 2 * ka / h * L),
            "XP+PX": (D, D, -D),
        }
    else:
        rules = {
            "L": (L, -L, -L),
            "X^2": (X2, X2 + 2 * th / h * L, X2 + 2 * th / h * L),
            "P^2": (P2, P2 + 2 * ka / h * L, P2 + 2 * ka / h * L),
            "XP+PX": (D, -D, D),
        }
    for name, (op, t_img, p_img) in rules.items():
        rep.add(f"T({name})", tt.apply(op) - t_img, ALGEBRA_TOL)
        rep.add(f"P({name})", pp.apply(op) - p_img, ALGEBRA_TOL)
    pt_img = {"L": L, "X^2": X2, "P^2": P2, "XP+PX": -D}
    # in both regions PT fixes L, X^2, P^2 and flips the dilation
    for name, (op, _, _) in rules.items():
        rep.add(f"PT({name})", pp.apply(tt.apply(op)) - pt_img[name], ALGEBRA_TOL)
    tp = [tt.apply(pp.apply(v)) for v in xi]
    pt = [pp.apply(tt.apply(v)) for v in xi]
    rep.out.append(
        CheckResult("TP = PT", str(pr.region), real.cutoff, max(real.residual(a - b) for a, b in zip(tp, pt)), INVOLUTION_TOL)
    )
    if pr.region is not Region.SUPER_CRITICAL:
        signs = np.diag(PARITY_SIGNS)
        val = max(real.residual(tp[i] - signs[i] * xi[i]) for i in range(4))
        rep.out.append(CheckResult("TP on variables", str(pr.region), real.cutoff, val, ALGEBRA_TOL))
    for tr in (tt, pp):
        twice = max(real.residual(tr.apply(tr.apply(v)) - v) for v in xi)
        rep.out.append(CheckResult(f"{tr.kind}^2 = 1", str(pr.region), real.cutoff, twice, INVOLUTION_TOL))
        r = tr.linear_map
        rep.out.append(
            CheckResult(f"{tr.kind}: map involution", str(pr.region), real.cutoff, float(np.abs(r @ r - np.eye(4)).max()), INVOLUTION_TOL)
        )
    return rep.out


def auxiliary_algebra_residual(real: FockRealization) -> list[CheckResult]:
    """Quadratic ladder algebras built from ``P+-K+-`` and ``X+-M+-``.

    Below the critical value they close into su(2), above it into sl(2,R).
    With the printed normalization ``[L/hbar, J+-] = +-2 J+-``; the rescaled
    set ``(L/2hbar, J+-/sqrt 2)`` obeys the standard relations, checked too.
    """
    pr = real.params
    if pr.region is Region.ZERO_KAPPA:
        raise ZeroKappaGenerators("auxiliary generators divide by kappa")
    require_noncritical(pr)
    rep = _Reporter(real)
    th, ka, h = pr.theta, pr.kappa, pr.hbar
    den = 1.0 - pr.ratio
    eye = real.identity()
    g = build_generators(real)
    L = g.L
    s2 = math.sqrt(2.0)
    x1, x2 = real.X
    p1, p2 = real.P
    pp_, pm_ = (p1 + 1j * p2) / s2, (p1 - 1j * p2) / s2
    kp_, km_ = (g.K1 + 1j * g.K2) / s2, (g.K1 - 1j * g.K2) / s2
    xp_, xm_ = (x1 + 1j * x2) / s2, (x1 - 1j * x2) / s2
    mp_, mm_ = (g.M1 + 1j * g.M2) / s2, (g.M1 - 1j * g.M2) / s2
    pk_p, pk_m = pp_ @ kp_, pm_ @ km_
    xm_p, xm_m = xp_ @ mp_, xm_ @ mm_
    rep.add("[L,V+]", comm(L, pp_) - h * pp_, ALGEBRA_TOL)
    rep.add("[L,P+K+]", comm(L, pk_p) - 2 * h * pk_p, CASIMIR_TOL)
    rep.add("[P+K+,P-K-] expanded", comm(pk_p, pk_m) - (-ka / den * pp_ @ pm_ + ka * km_ @ kp_), CASIMIR_TOL)
    rep.add("[P+K+,P-K-] = L", comm(pk_p, pk_m) - ka**2 / (h * den) * L, CASIMIR_TOL)
    rep.add("[L,X+M+]", comm(L, xm_p) - 2 * h * xm_p, CASIMIR_TOL)
    rep.add("[X+M+,X-M-] = L", comm(xm_p, xm_m) - th**2 / (h * den) * L, CASIMIR_TOL)
    compact = pr.region is not Region.SUPER_CRITICAL
    sgn = 1.0 if compact else -1.0
    cj = s2 * math.sqrt(abs(den)) / abs(ka)
    cn = s2 * math.sqrt(abs(den)) / th
    j3 = L / h
    p2op, x2op = p_squared(real), x_squared(real)
    for tag, (up, dn), quad, scale in (
        ("J", (cj * pk_p, cj * pk_m), p2op / ka, None),
        ("N", (cn * xm_p, cn * xm_m), x2op / th, None),
    ):
        rep.add(f"{tag}: [J3,J+] = 2J+", comm(j3, up) - 2 * up, CASIMIR_TOL)
        rep.add(f"{tag}: [J+,J-]", comm(up, dn) - 2 * sgn * j3, CASIMIR_TOL)
        rep.add(f"{tag}: J+^dagger = J-", up - dn.conj().T, INVOLUTION_TOL)
        target = 0.5 * ((quad + j3) @ (quad + j3) + j3 @ j3 - eye)
        cas = up @ dn + j3 @ (j3 - eye) if compact else j3 @ (j3 - eye) - up @ dn
        rep.add(f"{tag}: Casimir", cas - target, CASIMIR_TOL)
        h3, hu, hd = 0.5 * j3, up / s2, dn / s2
        rep.add(f"{tag}: rescaled [J3,J+]", comm(h3, hu) - hu, CASIMIR_TOL)
        rep.add(f"{tag}: rescaled [J+,J-]", comm(hu, hd) - 2 * sgn * h3, CASIMIR_TOL)
    return rep.out


def verify_all(params: NCParams, cutoff: int) -> list[CheckResult]:
    """Every oracle identity applicable to the parameter region."""
    real = build_realization(params, cutoff)
    out = algebra_residuals(real)
    if params.region is not Region.ZERO_KAPPA:
        out.append(CheckResult("Casimir", str(params.region), cutoff, casimir_residual(real), CASIMIR_TOL))
    out += discrete_residuals(real)
    if params.region is not Region.ZERO_KAPPA:
        out += auxiliary_algebra_residual(real)
    return out
