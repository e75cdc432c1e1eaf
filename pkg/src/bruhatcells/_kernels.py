"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Set ``BRUHATCELLS_NO_NUMBA=1`` before import to force the numpy path. Both paths
are always importable as ``*_numpy`` / ``*_numba`` so they can be compared.
"""
from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("BRUHATCELLS_NO_NUMBA", "") in ("", "0")


def qr_positive_numpy(g: np.ndarray):
    """Batched QR with positive real diagonal on R via modified Gram-Schmidt.

    ``g`` has shape (m, n, n). Each column is orthogonalized twice against the
    previous ones. Returns (Q, R, min_ratio) where min_ratio is the smallest
    R[j, j] / ||g_j|| seen, used by callers to detect singular input.
    """
    m, n, _ = g.shape
    q = np.zeros_like(g, dtype=complex)
    r = np.zeros_like(g, dtype=complex)
    min_ratio = np.inf
    for j in range(n):
        v = g[:, :, j].astype(complex)
        col_norm = np.linalg.norm(v, axis=1)
        for _ in range(2):
            for i in range(j):
                c = np.einsum("mk,mk->m", q[:, :, i].conj(), v)
                v = v - c[:, None] * q[:, :, i]
                r[:, i, j] += c
        d = np.linalg.norm(v, axis=1)
        ratio = np.min(d / np.where(col_norm > 0, col_norm, 1.0))
        min_ratio = min(min_ratio, float(ratio))
        safe = np.where(d > 0, d, 1.0)
        q[:, :, j] = v / safe[:, None]
        r[:, j, j] = d
    return q, r, min_ratio


def _qr_positive_loops(g, q, r):
    m, n, _ = g.shape
    min_ratio = np.inf
    for b in range(m):
        for j in range(n):
            v = np.empty(n, dtype=np.complex128)
            col2 = 0.0
            for k in range(n):
                v[k] = g[b, k, j]
                col2 += v[k].real ** 2 + v[k].imag ** 2
            for _ in range(2):
                for i in range(j):
                    c = 0j
                    for k in range(n):
                        c += q[b, k, i].conjugate() * v[k]
                    for k in range(n):
                        v[k] -= c * q[b, k, i]
                    r[b, i, j] += c
            d2 = 0.0
            for k in range(n):
                d2 += v[k].real ** 2 + v[k].imag ** 2
            d = math.sqrt(d2)
            col = math.sqrt(col2)
            if col > 0.0:
                ratio = d / col
                if ratio < min_ratio:
                    min_ratio = ratio
            if d > 0.0:
                for k in range(n):
                    q[b, k, j] = v[k] / d
            r[b, j, j] = d
    return min_ratio


def _mc_weights_loops(r2, exps, out):
    m, l = r2.shape
    for s in range(m):
        w = 1.0
        for j in range(l):
            w *= math.pi * (1.0 + r2[s, j]) ** (exps[j] + 2.0)
        out[s] = w


def mc_weights_numpy(r2: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """Importance weights prod_j pi (1 + r_j^2)^(e_j + 2) for the (1+r^2)^-2 proposal."""
    return np.prod(np.pi * (1.0 + r2) ** (exps + 2.0), axis=1)


if numba is not None:
    _qr_loops_jit = numba.njit(cache=True)(_qr_positive_loops)
    _mc_loops_jit = numba.njit(cache=True)(_mc_weights_loops)

    def qr_positive_numba(g: np.ndarray):
        g = np.ascontiguousarray(g, dtype=np.complex128)
        q = np.zeros_like(g)
        r = np.zeros_like(g)
        min_ratio = _qr_loops_jit(g, q, r)
        return q, r, float(min_ratio)

    def mc_weights_numba(r2: np.ndarray, exps: np.ndarray) -> np.ndarray:
        r2 = np.ascontiguousarray(r2, dtype=np.float64)
        out = np.empty(r2.shape[0])
        _mc_loops_jit(r2, np.ascontiguousarray(exps, dtype=np.float64), out)
        return out
else:  # pragma: no cover
    qr_positive_numba = qr_positive_numpy
    mc_weights_numba = mc_weights_numpy


if USE_NUMBA:
    qr_positive = qr_positive_numba
    mc_weights = mc_weights_numba
else:
    qr_positive = qr_positive_numpy
    mc_weights = mc_weights_numpy
