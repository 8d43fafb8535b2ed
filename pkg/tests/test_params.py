import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncqm import CriticalRegion, ValidationError
from ncqm.params import NCParams, Region, bopp_matrix, classify_region, commutator_matrix, require_noncritical

CANONICAL = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])


@pytest.mark.parametrize(
    "theta, kappa, region",
    [
        (1, 2, Region.SUPER_CRITICAL),
        (1, 1, Region.CRITICAL),
        (0.1, -0.5, Region.NEGATIVE_KAPPA),
        (0.5, 0, Region.ZERO_KAPPA),
        (1, 0.3, Region.SUB_CRITICAL),
        (0, 5, Region.SUB_CRITICAL),
    ],
)
def test_region_examples(theta, kappa, region):
    assert classify_region(NCParams(theta, kappa)) is region


def test_critical_comparison_is_exact():
    assert NCParams(0.5, 2.0).region is Region.CRITICAL
    assert NCParams(0.5, 2.0 + 1e-12).region is Region.SUPER_CRITICAL
    with pytest.raises(CriticalRegion):
        require_noncritical(NCParams(0.5, 2.0))


@pytest.mark.parametrize(
    "kwargs", [dict(theta=-1, kappa=0), dict(theta=1, kappa=0, hbar=0), dict(theta=1, kappa=0, mu=-1),
               dict(theta=math.nan, kappa=0), dict(theta=1, kappa=math.inf)]
)
def test_invalid_parameters(kwargs):
    with pytest.raises(ValidationError):
        NCParams(**kwargs)


def test_validation_error_is_value_error():
    assert issubclass(ValidationError, ValueError)


def test_commutator_determinant():
    g, det = commutator_matrix(NCParams(0, 0))
    assert np.array_equal(g, CANONICAL)
    assert det == 1.0
    assert commutator_matrix(NCParams(1, 1))[1] == 0.0
    g, det = commutator_matrix(NCParams(1, 0.5))
    assert det == pytest.approx(0.25, abs=1e-15)
    assert np.linalg.det(g) == pytest.approx(0.25, abs=1e-14)


def test_bopp_identity_in_commutative_limit():
    assert np.allclose(bopp_matrix(NCParams(0, 0)), np.eye(4), atol=0)


def test_bopp_examples():
    p = NCParams(1, 0.5)
    m = bopp_matrix(p)
    assert m[0, 0] ** 2 == pytest.approx((1 + math.sqrt(0.5)) / 2, abs=1e-15)
    assert np.abs(m @ CANONICAL @ m.T - commutator_matrix(p)[0]).max() < 1e-14
    p = NCParams(1, 2)
    m = bopp_matrix(p)
    assert np.abs(m @ CANONICAL @ m.T - commutator_matrix(p)[0]).max() < 1e-14


def test_bopp_rejects_critical():
    with pytest.raises(CriticalRegion):
        bopp_matrix(NCParams(2, 0.5))


positive = st.floats(0.05, 5.0)


@given(theta=st.floats(0.0, 5.0), kappa=st.floats(-5.0, 5.0), hbar=positive)
def test_bopp_reproduces_commutators(theta, kappa, hbar):
    p = NCParams(theta, kappa, hbar)
    if p.region is Region.CRITICAL or abs(1 - p.ratio) < 1e-6:
        return
    m = bopp_matrix(p)
    g = commutator_matrix(p)[0]
    assert np.abs(m @ CANONICAL @ m.T - g).max() < 1e-10 * max(1.0, np.abs(g).max(), np.abs(m).max() ** 2)


@given(theta=st.floats(0.0, 5.0), kappa=st.floats(-5.0, 5.0), hbar=positive)
def test_determinant_matches_matrix(theta, kappa, hbar):
    p = NCParams(theta, kappa, hbar)
    g, det = commutator_matrix(p)
    assert np.linalg.det(g * hbar) == pytest.approx(det, rel=1e-9, abs=1e-9 * hbar**4)
