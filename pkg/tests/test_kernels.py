import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncqm import _kernels_py as py
from ncqm import kernels

cy = pytest.importorskip("ncqm._kernels")


def test_backend_selected():
    assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    out = subprocess.run(
        [sys.executable, "-c", "from ncqm import kernels; print(kernels.BACKEND)"],
        env={**os.environ, "NCQM_PURE_PYTHON": "1"}, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@settings(deadline=None)
@given(a=st.floats(0.5, 4), w=st.floats(-5, 5), two_k=st.integers(1, 8), n=st.integers(1, 80))
def test_forward_agrees(a, w, two_k, n):
    np.testing.assert_allclose(cy.forward_psi(a, w, two_k, n), py.forward_psi(a, w, two_k, n), rtol=1e-13, atol=0)


@settings(deadline=None)
@given(a=st.floats(2.05, 4), w=st.floats(-5, 5), two_k=st.integers(1, 8), n_to=st.integers(1, 60))
def test_backward_agrees(a, w, two_k, n_to):
    start = 3 * n_to + 200
    v1, l1 = cy.backward_minimal(a, w, two_k, 0, n_to, start)
    v2, l2 = py.backward_minimal(a, w, two_k, 0, n_to, start)
    np.testing.assert_allclose(v1, v2, rtol=1e-12)
    assert l1 == pytest.approx(l2, abs=1e-9)


@settings(deadline=None)
@given(a=st.floats(-3, 3), z=st.floats(-5, 5), two_j=st.integers(0, 20))
def test_su2_forward_agrees(a, z, two_j):
    np.testing.assert_allclose(cy.su2_forward(a, z, two_j, two_j + 1), py.su2_forward(a, z, two_j, two_j + 1), rtol=1e-13)


@settings(deadline=None)
@given(seed=st.integers(0, 10_000), size=st.integers(2, 40))
def test_sturm_and_bisection(seed, size):
    rng = np.random.default_rng(seed)
    d, e = rng.normal(size=size), rng.uniform(0.1, 1.0, size - 1)
    vals = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    x = float(rng.normal())
    assert cy.sturm_count(d, e, x) == py.sturm_count(d, e, x) == int(np.sum(vals < x))
    idx = int(rng.integers(size))
    lo, hi = -10.0, 10.0
    assert cy.bisect_eigenvalue(d, e, idx, lo, hi, 1e-12) == pytest.approx(vals[idx], abs=1e-10)
    assert py.bisect_eigenvalue(d, e, idx, lo, hi, 1e-12) == pytest.approx(vals[idx], abs=1e-10)
