import numpy as np
import pytest

from mhpref import kernels
from mhpref.kernels import _pykernels

compiled = pytest.importorskip("mhpref.kernels._ckernels", reason="compiled kernels not built")


@pytest.fixture(scope="module")
def batches():
    rng = np.random.default_rng(123)
    F2 = rng.uniform(-8, 8, size=(4000, 2))
    F3 = rng.uniform(-8, 8, size=(4000, 3))
    P = rng.dirichlet(np.ones(3), size=60)
    v = rng.uniform(0, 1, size=60)
    v -= v.min()
    return F2, F3, P, v


def test_backend_selected():
    assert kernels.IMPL in ("python", "compiled")
    assert kernels.HAVE_COMPILED


@pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (0.0, 0.5), (2.5, 1.0), (0.7, 0.33)])
def test_quad_conj_parity(batches, alpha, beta):
    F2 = batches[0]
    py = _pykernels.quad_conj(F2, alpha, beta)
    cy = compiled.quad_conj(F2, alpha, beta)
    assert np.abs(py - cy).max() <= 1e-12
    py_t = _pykernels.quad_conj_arg(F2, alpha, beta)
    cy_t = compiled.quad_conj_arg(F2, alpha, beta)
    assert np.abs(py_t - cy_t).max() <= 1e-12


def test_grid_conj_parity(batches):
    _, F3, P, v = batches
    py = _pykernels.grid_conj(F3, P, v)
    cy = compiled.grid_conj(F3, P, v)
    assert np.abs(py - cy).max() <= 1e-12


@pytest.mark.parametrize("lam", [0.5, 5.0, 40.0])
def test_income_quad_parity(batches, lam):
    F2 = batches[0]
    py = _pykernels.income2_value_quad(F2, lam, 1.0, 0.4)
    cy = compiled.income2_value_quad(F2, lam, 1.0, 0.4)
    assert np.abs(py - cy).max() <= 1e-10


def test_income_pwl_parity(batches):
    F2 = batches[0]
    kt = np.array([0.1, 0.4, 0.8, 1.0])
    kc = np.array([0.3, 0.0, 0.2, 0.9])
    py = _pykernels.income2_value_pwl(F2, 3.0, kt, kc)
    cy = compiled.income2_value_pwl(F2, 3.0, kt, kc)
    assert np.abs(py - cy).max() <= 1e-10


def test_pure_python_env_override():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from mhpref import kernels; print(kernels.IMPL)"],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "MHPREF_PURE_PYTHON": "1"},
    )
    assert out.stdout.strip() == "python"


def test_single_row_shapes():
    f = np.array([[0.0, 1.0]])
    assert compiled.quad_conj(f, 1.0, 0.0).shape == (1,)
    assert _pykernels.quad_conj(f, 1.0, 0.0).shape == (1,)
