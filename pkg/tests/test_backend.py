import os
import subprocess
import sys

import numpy as np
import pytest

from genhilbert import _backend, _kernels_py

compiled = pytest.importorskip("genhilbert._kernels", reason="compiled core not built")


def test_backend_selected():
    assert _backend.BACKEND == "cython"
    assert _backend.hankel_direct is compiled.hankel_direct


def test_env_forces_python():
    env = dict(os.environ, GENHILBERT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import genhilbert._backend as b; print(b.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("K,n_out", [(0, 0), (1, 5), (37, 200), (600, 1500)])
def test_hankel_kernels_agree(K, n_out):
    rng = np.random.default_rng(K)
    mu = 1.0 / np.arange(1.0, n_out + K + 3)
    a = rng.standard_normal(K + 1)
    fast = compiled.hankel_direct(mu, a, n_out)
    slow = _kernels_py.hankel_direct(mu, a, n_out)
    scale = np.abs(a).sum()
    assert np.max(np.abs(fast - slow)) <= 1e-14 * scale


def test_hankel_short_moments():
    with pytest.raises(ValueError):
        compiled.hankel_direct(np.ones(3), np.ones(3), 3)
    with pytest.raises(ValueError):
        _kernels_py.hankel_direct(np.ones(3), np.ones(3), 3)


def test_horner_kernels_agree():
    rng = np.random.default_rng(1)
    c = rng.standard_normal(50) + 1j * rng.standard_normal(50)
    z = rng.uniform(-1, 1, 300) + 1j * rng.uniform(-1, 1, 300)
    ref = np.polynomial.polynomial.polyval(z, c)
    np.testing.assert_allclose(compiled.horner(c, z), ref, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(_kernels_py.horner(c, z), ref, rtol=1e-12, atol=1e-12)


def test_power_sums_matches_direct():
    rng = np.random.default_rng(2)
    lt = np.log(rng.uniform(0.01, 0.999, 200))
    w = rng.uniform(size=200)
    got = _kernels_py.power_sums(lt, w, 1100)
    n = np.arange(1101)
    ref = np.exp(n[:, None] * lt[None, :]) @ w
    np.testing.assert_allclose(got, ref, rtol=1e-13)
