import os
import subprocess
import sys

import numpy as np
import pytest

from bruhatcells import _kernels as K


def test_qr_paths_agree(rng):
    g = rng.normal(size=(50, 4, 4)) + 1j * rng.normal(size=(50, 4, 4))
    q1, r1, m1 = K.qr_positive_numpy(g)
    q2, r2, m2 = K.qr_positive_numba(g)
    assert np.allclose(q1, q2, atol=1e-14) and np.allclose(r1, r2, atol=1e-13)
    assert m1 == pytest.approx(m2)
    assert np.allclose(q1 @ r1, g, atol=1e-13)
    d = np.diagonal(r1, axis1=1, axis2=2)
    assert np.all(d.real > 0) and np.allclose(d.imag, 0)


def test_qr_matches_numpy_linalg(rng):
    g = rng.normal(size=(10, 3, 3)) + 1j * rng.normal(size=(10, 3, 3))
    q, r, _ = K.qr_positive_numpy(g)
    q0, r0 = np.linalg.qr(g)
    phase = np.diagonal(r0, axis1=1, axis2=2)
    phase = phase / abs(phase)
    assert np.allclose(q, q0 * phase[:, None, :], atol=1e-13)


def test_qr_singular_ratio():
    g = np.array([[[1, 1, 0], [1, 1, 0], [0, 0, 1.0]]], dtype=complex)
    assert K.qr_positive_numpy(g)[2] < 1e-12
    assert K.qr_positive_numba(g)[2] < 1e-12


def test_mc_weights_paths_agree(rng):
    r2 = rng.random((1000, 3)) * 10
    e = np.array([-2.0, -3.0, -2.5])
    w1, w2 = K.mc_weights_numpy(r2, e), K.mc_weights_numba(r2, e)
    assert np.allclose(w1, w2, rtol=1e-14)
    assert np.allclose(w1, np.prod(np.pi * (1 + r2) ** (e + 2), axis=1))


def test_selection_flag():
    code = "from bruhatcells import _kernels as K; print(K.USE_NUMBA, K.qr_positive is K.qr_positive_numpy)"
    env = dict(os.environ, BRUHATCELLS_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]
    env["BRUHATCELLS_NO_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["True", "False"]
