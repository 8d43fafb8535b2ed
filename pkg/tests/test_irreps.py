import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncqm import CriticalRegion, IrrepRegionMismatch, ValidationError
from ncqm.errors import DegenerateAxis, NotBoostable
from ncqm.irreps import (
    IrrepLabel,
    admissible_irreps,
    boost_residual,
    check_irrep_region,
    generator_matrices,
    half_integer,
    rotation_residual,
    sl2_boost_angle,
    su2_rotation_angle,
)
from ncqm.params import Region

H = Fraction(1, 2)


def labels(irreps):
    return [(ir.label, ir.l) for ir in irreps]


def test_admissible_examples():
    assert labels(admissible_irreps(Region.SUPER_CRITICAL, 1)) == [(0, -1), (H, -2), (1, -3)]
    assert labels(admissible_irreps(Region.SUB_CRITICAL, 1)) == [(H, 0), (1, 1), (1, -1)]
    assert labels(admissible_irreps(Region.NEGATIVE_KAPPA, H)) == [(H, 0)]
    with pytest.raises(CriticalRegion):
        admissible_irreps(Region.CRITICAL, 1)


def test_half_k_canonical_sign():
    assert IrrepLabel.sl2(H, -1) == IrrepLabel.sl2(H, 1)
    assert IrrepLabel.sl2(H, -1).s == 1


@pytest.mark.parametrize("text, value", [("3/2", Fraction(3, 2)), ("1", 1), ("0.5", H), (2.5, Fraction(5, 2))])
def test_half_integer_parsing(text, value):
    assert half_integer(text) == value


@pytest.mark.parametrize("bad", ["1/3", "x", 0.3])
def test_half_integer_rejects(bad):
    with pytest.raises(ValidationError):
        half_integer(bad)


def test_label_validation():
    with pytest.raises(ValidationError):
        IrrepLabel.sl2(0)
    with pytest.raises(ValidationError):
        IrrepLabel.su2(-1)
    with pytest.raises(ValidationError):
        IrrepLabel.sl2(1, 2)


def test_region_mismatch():
    with pytest.raises(IrrepRegionMismatch):
        check_irrep_region(IrrepLabel.su2(1), Region.SUB_CRITICAL)
    with pytest.raises(IrrepRegionMismatch):
        check_irrep_region(IrrepLabel.sl2(1), Region.SUPER_CRITICAL)


def test_string_and_dict_roundtrip():
    ir = IrrepLabel.sl2(Fraction(3, 2), -1)
    assert str(ir) == "<k=3/2, l=-2>"
    assert IrrepLabel.from_dict(ir.to_dict()) == ir
    su = IrrepLabel.su2(1)
    assert str(su) == "<j=1, l=-3>"
    assert IrrepLabel.from_dict(su.to_dict()) == su


def test_generator_matrix_examples():
    g = generator_matrices(IrrepLabel.su2(H))
    assert np.array_equal(g.diag, [-0.5, 0.5]) and np.array_equal(g.raise_, [1.0])
    g = generator_matrices(IrrepLabel.sl2(H), 3)
    assert np.allclose(g.diag, [0.5, 1.5, 2.5], atol=0) and np.allclose(g.raise_, [1, 2], atol=1e-15)
    g = generator_matrices(IrrepLabel.sl2(1), 2)
    assert g.raise_[0] == pytest.approx(math.sqrt(2), abs=1e-15)


def test_boost_and_rotation_examples():
    assert sl2_boost_angle(2, 1) == pytest.approx(math.atanh(0.5))
    assert sl2_boost_angle(1, 0) == 0.0
    with pytest.raises(NotBoostable):
        sl2_boost_angle(1, 1)
    assert boost_residual(2, 1) < 1e-10
    assert su2_rotation_angle(1, 0) == 0.0
    assert su2_rotation_angle(1, 1) == pytest.approx(math.pi / 4)
    with pytest.raises(DegenerateAxis):
        su2_rotation_angle(0, 1)
    for j in (H, 1, Fraction(5, 2)):
        assert rotation_residual(3, 4, IrrepLabel.su2(j)) < 1e-12
        assert rotation_residual(1, 1, IrrepLabel.su2(j)) < 1e-12


two_labels = st.integers(1, 12)


@given(two_k=two_labels, s=st.sampled_from([1, -1]))
def test_sl2_constraint(two_k, s):
    ir = IrrepLabel.sl2(Fraction(two_k, 2), s)
    assert 4 * ir.casimir == ir.l**2 - 1


@given(two_j=st.integers(0, 12))
def test_su2_constraint(two_j):
    ir = IrrepLabel.su2(Fraction(two_j, 2))
    assert 4 * ir.casimir == ir.l**2 - 1


@given(two_j=st.integers(0, 10))
def test_su2_matrices_close_algebra(two_j):
    g0, gp, gm = generator_matrices(IrrepLabel.su2(Fraction(two_j, 2))).dense()
    assert np.abs(gp @ gm - gm @ gp - 2 * g0).max() < 1e-12
    j = two_j / 2
    cas = g0 @ g0 + 0.5 * (gp @ gm + gm @ gp)
    assert np.abs(cas - j * (j + 1) * np.eye(two_j + 1)).max() < 1e-11


@given(two_k=two_labels)
def test_sl2_matrices_close_algebra_on_leading_block(two_k):
    n = 12
    g0, gp, gm = generator_matrices(IrrepLabel.sl2(Fraction(two_k, 2)), n).dense()
    comm = gp @ gm - gm @ gp + 2 * g0
    assert np.abs(comm[: n - 1, : n - 1]).max() < 1e-11


@given(A=st.floats(0.5, 5), frac=st.floats(-0.9, 0.9))
def test_boost_diagonalizes(A, frac):
    # strong boosts leak from the truncation edge, so widen the basis
    assert boost_residual(A, frac * A, truncation=160) < 1e-10 * A
