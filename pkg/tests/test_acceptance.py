"""End-to-end acceptance criteria, one printed PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ncqm.fock import (
    algebra_residuals,
    build_realization,
    casimir_residual,
    diagonalize_hamiltonian,
    discrete_residuals,
    landau_coefficients,
    landau_operator,
    matched_scale,
    oscillator_coefficients,
    oscillator_operator,
)
from ncqm.irreps import IrrepLabel, admissible_irreps
from ncqm.models import (
    LandauSpec,
    OscillatorSpec,
    QuantaPair,
    landau_density_of_states,
    landau_level_energy,
    landau_level_in_irrep,
    landau_level_index,
    oscillator_frequencies,
    oscillator_level,
    oscillator_spectrum,
)
from ncqm.params import NCParams
from ncqm.solver import StepPotential, solve_converged
from ncqm.specfun import RecursionSpec, laguerre_roots, minimal_exterior
from ncqm.wells import (
    WellSpec,
    finite_well_bound_states,
    infinite_well_roots,
    infinite_well_spectrum,
    state_counts,
    su2_closed_forms,
)

KAPPAS = (-0.5, 0.3, 2.0)
H = Fraction(1, 2)
EXACT_WELL = np.array([2 - math.sqrt(2), 2 + math.sqrt(2)])


def _line(number: int, ok: bool, title: str, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} | {detail}"


# --- criteria -------------------------------------------------------------------


def criterion_1():
    worst = 0.0
    for k in KAPPAS:
        real = build_realization(NCParams(1.0, k), 20)
        worst = max(worst, max(r.residual for r in algebra_residuals(real)))
    return worst < 1e-10, "algebra residuals", f"max residual {worst:.2e} (tol 1e-10)"


def criterion_2():
    res = {k: [casimir_residual(build_realization(NCParams(1.0, k), c)) for c in (12, 20, 30)] for k in KAPPAS}
    bounded = all(max(r[1:]) < 1e-9 for r in res.values())
    decreasing = all(r[2] <= r[1] <= r[0] for r in res.values())
    detail = "; ".join(f"kappa={k}: " + " -> ".join(f"{v:.1e}" for v in r) for k, r in res.items())
    detail += f" | <1e-9 at cutoffs 20 and 30: {bounded}; non-increasing 12->20->30: {decreasing}"
    return bounded and decreasing, "Casimir constraint", detail


def criterion_3():
    worst_alg, worst_tp = 0.0, 0.0
    for k in KAPPAS:
        for r in discrete_residuals(build_realization(NCParams(1.0, k), 20)):
            if r.check.startswith("TP"):
                worst_tp = max(worst_tp, r.residual)
            else:
                worst_alg = max(worst_alg, r.residual)
    ok = worst_alg < 1e-10 and worst_tp < 1e-12
    return ok, "discrete symmetries", f"T/P rules {worst_alg:.2e} (tol 1e-10); TP=PT {worst_tp:.2e} (tol 1e-12)"


def _oracle_oscillator(p, omega=1.0, count=10):
    real = build_realization(p, 20, matched_scale(p, **oscillator_coefficients(p, omega)))
    vals = diagonalize_hamiltonian(real, lambda r: oscillator_operator(r, omega)).converged_values
    return np.sort(vals)[:count]


def criterion_4():
    wp, wm = oscillator_frequencies(NCParams(0.1, 0.1), OscillatorSpec(1.0))
    err_a = max(abs(wp - 1.1), abs(wm - 0.9))
    err_b, lattice_ok = 0.0, True
    for p in (NCParams(0.1, 0.1), *(NCParams(1.0, k) for k in KAPPAS), NCParams(1.0, 0.0)):
        spec = OscillatorSpec(1.0)
        entries = oscillator_spectrum(p, spec, 5)
        quanta = sorted(e.quanta for e in entries)
        lattice_ok &= quanta == sorted(QuantaPair(a, b) for a in range(6) for b in range(6 - a))
        got = sorted(e.energy for e in entries)
        ref = sorted(oscillator_level(p, spec, q) for q in quanta)
        err_b = max(err_b, max(abs(x - y) for x, y in zip(got, ref)))
    err_c = 0.0
    for k in KAPPAS:
        p = NCParams(1.0, k)
        ref = sorted(e.energy for e in oscillator_spectrum(p, OscillatorSpec(1.0), 9))[:10]
        err_c = max(err_c, float(np.abs(_oracle_oscillator(p) - ref).max()))
    ok = err_a < 1e-12 and lattice_ok and err_b < 1e-12 and err_c < 1e-6
    return ok, "oscillator", f"(a) {err_a:.1e} (b) lattice={lattice_ok} {err_b:.1e} (c) oracle {err_c:.1e}"


def criterion_5():
    p0, spec = NCParams(0, 0), LandauSpec(2.0)
    err_a = max(abs(landau_level_energy(p0, spec, n) - 2.0 * (n + 0.5)) for n in range(10))
    err_a = max(err_a, abs(landau_density_of_states(p0, spec).value - 2.0 / (2 * math.pi)))
    err_b = 0.0
    for p in (*(NCParams(1.0, k) for k in KAPPAS), NCParams(0.7, -3.0), NCParams(0.5, 0.0)):
        for eB in (0.5, 1.0, 3.0):
            s = LandauSpec(eB)
            for irrep in admissible_irreps(p.region, 4):
                for m in irrep.m_values(6):
                    n = landau_level_index(p, s, irrep, m)
                    err_b = max(err_b, abs(landau_level_in_irrep(p, s, irrep, m) - landau_level_energy(p, s, n)))
    err_c, min_deg = 0.0, math.inf
    for k in KAPPAS:
        p, s = NCParams(1.0, k), LandauSpec(1.0)
        real = build_realization(p, 24, matched_scale(p, **landau_coefficients(p, 1.0)))
        vals = np.sort(diagonalize_hamiltonian(real, lambda r: landau_operator(r, 1.0)).converged_values)
        e0 = landau_level_energy(p, s, 0)
        vals = vals[vals >= e0 - 1e-6]  # truncation artefacts below the ground level are discarded
        for n in range(5):
            e = landau_level_energy(p, s, n)
            err_c = max(err_c, float(np.min(np.abs(vals - e))))
            min_deg = min(min_deg, int(np.sum(np.abs(vals - e) < 1e-6)))
    rho = lambda k: landau_density_of_states(NCParams(1.0, k), LandauSpec(1.0)).value
    below, above = rho(0.99) / rho(0.9), rho(1.01) / rho(1.1)
    ok = err_a < 1e-12 and err_b < 1e-12 and err_c < 1e-6 and min_deg >= 3 and below > 5 and above > 5
    detail = (f"(a) {err_a:.1e} (b) {err_b:.1e} (c) oracle {err_c:.1e}, min degeneracy {min_deg} "
              f"(d) rho ratio {below:.1f} below / {above:.1f} above")
    return ok, "Landau", detail


def criterion_6():
    p, irrep = NCParams(1.0, 0.0), IrrepLabel.sl2(H)
    well = WellSpec.from_ratio(math.inf, 3.0, 1.0)
    tri = infinite_well_spectrum(p, irrep, well)
    roots = infinite_well_roots(p, irrep, well)
    lag = laguerre_roots(2, 0)
    err = max(np.abs(tri - EXACT_WELL).max(), np.abs(roots - EXACT_WELL).max(), np.abs(lag - EXACT_WELL).max())
    return err < 1e-10, "infinite well, kappa=0", f"max deviation from 2-+sqrt2: {err:.1e} (tol 1e-10)"


def criterion_7():
    err, checked = 0.0, 0
    for k in KAPPAS:
        p = NCParams(1.0, k)
        for ratio in (1.0, 3.0, 7.0):
            well = WellSpec.from_ratio(math.inf, ratio, 1.0)
            for irrep in admissible_irreps(p.region, 3):
                a, b = infinite_well_spectrum(p, irrep, well), infinite_well_roots(p, irrep, well)
                if len(a) != len(b):
                    return False, "infinite well, kappa!=0", f"length mismatch at {irrep}"
                if len(a):
                    checked += 1
                    err = max(err, float(np.abs(a - b).max() / max(1.0, np.abs(a).max())))
    well = WellSpec.from_ratio(math.inf, 3.0, 1.0)
    lim = max(float(np.abs(infinite_well_roots(NCParams(1.0, k), IrrepLabel.sl2(H), well) - EXACT_WELL).max())
              for k in (1e-6, -1e-6))
    ok = err < 1e-9 and lim < 1e-4
    return ok, "infinite well, kappa!=0", f"roots vs tridiagonal {err:.1e} over {checked} irreps; kappa->0+- {lim:.1e}"


def criterion_8():
    err, configs = 0.0, set()
    for p in (NCParams(1.0, 2.0), NCParams(0.5, 3.3, 1.1, 0.8)):
        for ratio in (0.5, 1.0, 2.0, 2.5, 3.0, 4.0):
            for V0 in (0.7, 5.0):
                well = WellSpec.from_ratio(V0, ratio, p.theta)
                for j in (0, H):
                    got = su2_closed_forms(p, well, j)
                    ref = finite_well_bound_states(p, IrrepLabel.su2(j), well)
                    err = max(err, float(np.abs(got - ref).max()))
                    configs.add((j, well.floor(p) >= 2 * j + 1))
    ok = err < 1e-12 and len(configs) == 4
    return ok, "su(2) closed forms", f"max deviation {err:.1e} (tol 1e-12); inside/outside configs seen {len(configs)}/4"


def criterion_9():
    p, irrep = NCParams(1.0, 0.0), IrrepLabel.sl2(H)
    devs, err = [], 0.0
    for V0 in (50.0, 500.0, 5000.0, 50000.0):
        e = finite_well_bound_states(p, irrep, WellSpec.from_ratio(V0, 3.0, 1.0))[:2]
        devs.append(float(np.abs(e - EXACT_WELL).max()))
        ref = solve_converged(p, irrep, StepPotential(V0, 3.0), 2).eigenvalues
        err = max(err, float(np.abs(e - ref).max() / np.abs(ref).max()))
    monotone = all(b < a for a, b in zip(devs, devs[1:]))
    detail = "deviation " + " -> ".join(f"{d:.1e}" for d in devs) + f"; matching vs step solver {err:.1e} (tol 1e-6)"
    return monotone and err < 1e-6, "finite well", detail


def criterion_10():
    mism, total = 0, 0
    for k in (-0.5, 0.0, 0.3, 2.0):
        p = NCParams(1.0, k)
        for ratio in (1.0, 3.0, 7.0):
            well = WellSpec.from_ratio(math.inf, ratio, 1.0)
            for c in state_counts(p, well.A, 6):
                total += 1
                mism += c.count != len(infinite_well_spectrum(p, c.irrep, well))
    return mism == 0, "state counting", f"{total - mism}/{total} irreps agree exactly"


def criterion_11():
    worst = 0.0
    for z in (-1.0, -0.3, -4.0):
        seq = minimal_exterior(RecursionSpec("sl2", 2.0, 1.0, z - 1.0, H), 0, 260)
        rate = math.log(abs(seq[250] / seq[150]))
        pred = -2 * math.sqrt(-z) * (math.sqrt(250) - math.sqrt(150))
        worst = max(worst, abs(rate / pred - 1))
    return worst < 0.05, "minimal-solution asymptotics", f"max relative rate error {worst:.2%} (tol 5%)"


CLI_RUNS = [
    ["oscillator", "--theta", "0.1", "--kappa", "0.1", "--omega", "1", "--levels", "12", "--format", "csv"],
    ["well", "--theta", "1", "--kappa", "0.3", "--A2-over-theta", "5", "--V0", "20", "--max-label", "3/2", "--jobs", "2"],
    ["spectrum", "--theta", "1", "--kappa", "-0.5", "--potential", "oscillator:1.3", "--max-label", "1", "--levels", "4"],
    ["landau", "--theta", "1", "--B", "1", "--dos-sweep=0:2:9", "--format", "csv"],
]


def criterion_12():
    same = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, args in enumerate(CLI_RUNS):
            blobs = []
            for rep in range(2):
                path = Path(tmp) / f"out{i}_{rep}"
                subprocess.run([sys.executable, "-m", "ncqm.cli", *args, "--out", str(path)], check=True)
                blobs.append(path.read_bytes())
            same += blobs[0] == blobs[1] and len(blobs[0]) > 0
    return same == len(CLI_RUNS), "determinism", f"{same}/{len(CLI_RUNS)} commands byte-identical across two runs"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(number, capsys):
    ok, title, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + _line(number, ok, title, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, title, detail = fn()
        results.append(ok)
        print(_line(i, ok, title, detail))
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
