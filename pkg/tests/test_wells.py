import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncqm import IrrepRegionMismatch, ThetaZero
from ncqm.irreps import IrrepLabel, admissible_irreps
from ncqm.params import NCParams
from ncqm.solver import StepPotential, build_hamiltonian, solve_converged
from ncqm.specfun import laguerre_roots
from ncqm.wells import (
    WellSpec,
    finite_well_bound_states,
    infinite_well_roots,
    infinite_well_spectrum,
    infinite_well_states,
    interior_count,
    state_counts,
    su2_closed_forms,
)

H = Fraction(1, 2)
S2 = math.sqrt(2)
INF3 = WellSpec.from_ratio(math.inf, 3, 1.0)


def test_interior_count_examples():
    p = NCParams(1, 0)
    ic = interior_count(p, IrrepLabel.sl2(H), INF3.A)
    assert ic.threshold == 1 and ic.count == 2
    ic = interior_count(NCParams(1, 2), IrrepLabel.su2(1), math.sqrt(7))
    assert ic.threshold == 2 and ic.count == 3
    # k = 1, s = -1: interior iff 2n + 3 <= 3, so only n = 0
    ic = interior_count(p, IrrepLabel.sl2(1, -1), INF3.A)
    assert ic.threshold == 0 and ic.count == 1


def test_boundary_state_is_interior():
    # A^2 / theta = 1 puts the k = 1/2 ground weight exactly on the boundary
    ic = interior_count(NCParams(1, 0), IrrepLabel.sl2(H), 1.0)
    assert ic.count == 1


def test_theta_zero_rejected():
    with pytest.raises(ThetaZero):
        interior_count(NCParams(0, 0.5), IrrepLabel.sl2(H), 1.0)
    with pytest.raises(ThetaZero):
        state_counts(NCParams(0, 0.5), 1.0, 2)


def test_zero_kappa_laguerre_example():
    p = NCParams(1, 0)
    irrep = IrrepLabel.sl2(H)
    ref = [2 - S2, 2 + S2]
    assert np.allclose(infinite_well_spectrum(p, irrep, INF3), ref, atol=1e-12)
    assert np.allclose(infinite_well_roots(p, irrep, INF3), ref, atol=1e-12)
    assert np.allclose(laguerre_roots(2, 0), ref, atol=1e-12)


def test_su2_single_interior_state():
    p = NCParams(1, 2)
    assert np.allclose(infinite_well_spectrum(p, IrrepLabel.su2(0), INF3), [1.0], atol=1e-14)


@pytest.mark.parametrize("kappa", [-0.5, 0.3, 2.0, 0.0])
@pytest.mark.parametrize("ratio", [1, 3, 7, 7.5])
def test_root_tridiagonal_duality_and_counts(kappa, ratio):
    p = NCParams(1, kappa)
    well = WellSpec.from_ratio(math.inf, ratio, 1.0)
    counts = {c.irrep: c.count for c in state_counts(p, well.A, 6)}
    for irrep in admissible_irreps(p.region, 6):
        e1, e2 = infinite_well_spectrum(p, irrep, well), infinite_well_roots(p, irrep, well)
        assert len(e1) == len(e2) == counts[irrep]
        if len(e1):
            assert np.abs(e1 - e2).max() < 1e-9 * max(1.0, np.abs(e1).max())


def test_state_count_examples():
    counts = {(c.irrep.label, c.irrep.s): c.count for c in state_counts(NCParams(1, 0.3), math.sqrt(3), 3)}
    assert all(counts[(k, 1)] == 2 for k in (H, 1, Fraction(3, 2), 2))
    assert counts[(1, -1)] == 1 and counts[(Fraction(3, 2), -1)] == 0 and counts[(2, -1)] == 0


def test_small_kappa_continuity():
    irrep = IrrepLabel.sl2(H)
    ref = np.array([2 - S2, 2 + S2])
    for k in (1e-6, -1e-6):
        assert np.allclose(infinite_well_spectrum(NCParams(1, k), irrep, INF3), ref, rtol=1e-4)
    d1 = np.abs(infinite_well_spectrum(NCParams(1, 0.01), irrep, INF3) - ref).max()
    d2 = np.abs(infinite_well_spectrum(NCParams(1, 0.001), irrep, INF3) - ref).max()
    assert d2 < d1 / 5  # O(kappa)


def test_infinite_well_vectors_vanish_outside():
    p = NCParams(1, 0.3)
    for irrep in admissible_irreps(p.region, 2):
        energies, vecs = infinite_well_states(p, irrep, WellSpec.from_ratio(math.inf, 7, 1.0), 20)
        lattice = build_hamiltonian(p, irrep, None, vecs.shape[0]).lattice
        assert vecs.shape[1] == len(energies) > 0
        assert np.all(vecs[lattice > 7, :] == 0.0)
        assert np.allclose(np.linalg.norm(vecs, axis=0), 1.0)


def test_deep_well_limit():
    p = NCParams(1, 0)
    got = finite_well_bound_states(p, IrrepLabel.sl2(H), WellSpec.from_ratio(1e4, 3, 1.0))
    assert np.allclose(got[:2], [2 - S2, 2 + S2], rtol=1e-2)


def test_finite_well_example_matches_step_solver():
    p, irrep = NCParams(1, 0), IrrepLabel.sl2(H)
    got = finite_well_bound_states(p, irrep, WellSpec.from_ratio(50, 3, 1.0))
    assert len(got) == 2
    ref = solve_converged(p, irrep, StepPotential(50, 3), 2).eigenvalues
    assert np.allclose(got, ref, rtol=1e-6)


def test_shallow_well_has_no_bound_state():
    got = finite_well_bound_states(NCParams(1, 0), IrrepLabel.sl2(H), WellSpec.from_ratio(0.1, 1, 1.0))
    assert len(got) == 0


@pytest.mark.parametrize("p", [NCParams(1, 0.3), NCParams(1, -0.5), NCParams(0.5, 1.0)])
def test_finite_below_infinite(p):
    for irrep in admissible_irreps(p.region, Fraction(3, 2)):
        fin = finite_well_bound_states(p, irrep, WellSpec.from_ratio(20, 5, p.theta))
        inf = infinite_well_spectrum(p, irrep, WellSpec.from_ratio(math.inf, 5, p.theta))
        n = min(len(fin), len(inf))
        assert np.all(fin[:n] <= inf[:n] + 1e-9)
        assert np.all((fin > 0) & (fin < 20))


def test_su2_closed_form_examples():
    p = NCParams(1, 2)
    inside = WellSpec.from_ratio(3.0, 1, 1.0)
    outside = WellSpec.from_ratio(3.0, 0.5, 1.0)
    assert np.allclose(su2_closed_forms(p, inside, 0), [1.0], atol=1e-14)
    assert np.allclose(su2_closed_forms(p, outside, 0), [4.0], atol=1e-14)
    assert np.allclose(su2_closed_forms(p, outside, H), [2 * 0.5 + 3, 2 * 1.5 + 3], atol=1e-14)
    with pytest.raises(IrrepRegionMismatch):
        su2_closed_forms(NCParams(1, 0.3), inside, 0)


@pytest.mark.parametrize("ratio", [0.5, 1, 2, 2.5, 3, 4])
@pytest.mark.parametrize("V0", [0.7, 5.0])
@pytest.mark.parametrize("p", [NCParams(1, 2), NCParams(0.5, 3.3, 1.1, 0.8)])
def test_su2_closed_forms_match_eigensolve(ratio, V0, p):
    well = WellSpec.from_ratio(V0, ratio, p.theta)
    for j in (0, H):
        got = su2_closed_forms(p, well, j)
        ref = finite_well_bound_states(p, IrrepLabel.su2(j), well)
        assert np.abs(got - ref).max() < 1e-12


@settings(max_examples=25, deadline=None)
@given(kappa=st.floats(-1.5, 3), ratio=st.floats(0.5, 12), two_label=st.integers(1, 8))
def test_duality_property(kappa, ratio, two_label):
    p = NCParams(1, kappa)
    if abs(1 - p.ratio) < 1e-3:
        return
    well = WellSpec.from_ratio(math.inf, ratio, 1.0)
    for irrep in admissible_irreps(p.region, Fraction(two_label, 2))[-2:]:
        e1, e2 = infinite_well_spectrum(p, irrep, well), infinite_well_roots(p, irrep, well)
        assert len(e1) == len(e2) == interior_count(p, irrep, well.A).count
        if len(e1):
            assert np.abs(e1 - e2).max() < 1e-8 * max(1.0, np.abs(e1).max())
