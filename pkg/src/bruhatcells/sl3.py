"""Closed forms for the longest cell of SL(3) with the word (1, 2, 1).

These are hand-derived formulas in the z- and u-coordinates, used as golden
values against the general machinery.
"""
from __future__ import annotations

import numpy as np

WORD = (1, 2, 1)


def _eps(z):
    return np.sqrt(1 + np.abs(z) ** 2)


def _split(z):
    z = np.asarray(z, dtype=complex)
    return z[..., 0], z[..., 1], z[..., 2]


def u_from_z(z) -> np.ndarray:
    z1, z2, z3 = _split(z)
    e1, e2 = _eps(z1), _eps(z2)
    u1 = z1
    u2 = (e2 * z3 - 1j * np.conj(z1) * z2) / e1
    u3 = (e2 * z1 * z3 + 1j * z2) / e1
    return np.stack([u1, u2, u3], axis=-1)


def deltas_u(u) -> np.ndarray:
    u1, u2, u3 = _split(u)
    d1 = np.sqrt(1 + abs(u1) ** 2)
    d2 = np.sqrt(1 + abs(u1) ** 2 + abs(u1 * u2 - u3) ** 2)
    d3 = np.sqrt(1 + abs(u2) ** 2 + abs(u3) ** 2)
    return np.stack([d1, d2, d3], axis=-1)


def deltas_z(z) -> np.ndarray:
    z1, z2, z3 = _split(z)
    e1, e2, e3 = _eps(z1), _eps(z2), _eps(z3)
    return np.stack([e1, e1 * e2, e2 * e3], axis=-1)


def z_from_u(u) -> np.ndarray:
    u1, u2, u3 = _split(u)
    d = deltas_u(u)
    z2 = 1j * (u1 * u2 - u3) / d[..., 0]
    z3 = (np.conj(u1) * u3 + u2) / d[..., 1]
    return np.stack([u1, z2, z3], axis=-1)


def n_matrix(u) -> np.ndarray:
    u1, u2, u3 = _split(u)
    m = np.zeros(np.shape(u1) + (3, 3), dtype=complex)
    m[..., 0, 0] = m[..., 1, 1] = m[..., 2, 2] = 1
    m[..., 0, 1], m[..., 0, 2], m[..., 1, 2] = u1, u3, u2
    return m


def a_w_diag_z(z) -> np.ndarray:
    z1, z2, z3 = _split(z)
    e1, e2, e3 = _eps(z1), _eps(z2), _eps(z3)
    return np.stack([e2 * e3, e1 / e3, 1 / (e1 * e2)], axis=-1)


def a_w_diag_u(u) -> np.ndarray:
    d = deltas_u(u)
    return np.stack([d[..., 2], d[..., 1] / d[..., 2], 1 / d[..., 1]], axis=-1)


def iwasawa_k_u(u) -> np.ndarray:
    """K-factor of n(u) w_dot in the displayed closed form."""
    u1, u2, u3 = _split(u)
    d = deltas_u(u)
    d2, d3 = d[..., 1], d[..., 2]
    c = np.conj
    k = np.zeros(np.shape(u1) + (3, 3), dtype=complex)
    k[..., 0, 0] = -u3 / d3
    k[..., 0, 1] = -(u1 * (1 + abs(u2) ** 2) - c(u2) * u3) / (d2 * d3)
    k[..., 0, 2] = -1 / d2
    k[..., 1, 0] = -u2 / d3
    # |u3|^2 here, forced by the second column of k (an) = n w_dot
    k[..., 1, 1] = -(1 + abs(u3) ** 2 - u1 * u2 * c(u3)) / (d2 * d3)
    k[..., 1, 2] = c(u1) / d2
    k[..., 2, 0] = -1 / d3
    k[..., 2, 1] = (c(u2) + u1 * c(u3)) / (d2 * d3)
    k[..., 2, 2] = (c(u3) - c(u1) * c(u2)) / d2
    return k


def iwasawa_an_u(u) -> np.ndarray:
    """AN-factor of n(u) w_dot in the displayed closed form."""
    u1, u2, u3 = _split(u)
    d = deltas_u(u)
    d2, d3 = d[..., 1], d[..., 2]
    c = np.conj
    b = np.zeros(np.shape(u1) + (3, 3), dtype=complex)
    b[..., 0, 0] = d3
    b[..., 0, 1] = (c(u2) + u1 * c(u3)) / d3
    b[..., 0, 2] = c(u3) / d3
    b[..., 1, 1] = d2 / d3
    b[..., 1, 2] = (c(u1) * (1 + abs(u2) ** 2) - u2 * c(u3)) / (d2 * d3)
    b[..., 2, 2] = 1 / d2
    return b


def circ_product_z(z) -> np.ndarray:
    """(n_1 o g1)(n_2 o g2)(n_3 o g1) as displayed entrywise."""
    z1, z2, z3 = _split(z)
    e1, e2, e3 = _eps(z1), _eps(z2), _eps(z3)
    c = np.conj
    m = np.zeros(np.shape(z1) + (3, 3), dtype=complex)
    m[..., 0, 0] = -e2 * z1 * z3 - 1j * z2
    m[..., 0, 1] = -e2 * z1 + 1j * z2 * c(z3)
    m[..., 0, 2] = -e3
    m[..., 1, 0] = -e2 * z3 + 1j * c(z1) * z2
    m[..., 1, 1] = -e2 - 1j * c(z1) * z2 * c(z3)
    m[..., 1, 2] = c(z1) * e3
    m[..., 2, 0] = -e1
    m[..., 2, 1] = e1 * c(z3)
    m[..., 2, 2] = -1j * e1 * e3 * c(z2)
    return m / (e1 * e2 * e3)[..., None, None]


def wirtinger_u(z):
    """(du/dz, du/dzbar) as two (..., 3, 3) arrays, derived by hand from u_from_z."""
    z1, z2, z3 = _split(z)
    e1, e2 = _eps(z1), _eps(z2)
    c = np.conj
    N = e2 * z3 - 1j * c(z1) * z2
    M = e2 * z1 * z3 + 1j * z2
    shape = np.shape(z1) + (3, 3)
    A = np.zeros(shape, dtype=complex)
    B = np.zeros(shape, dtype=complex)
    A[..., 0, 0] = 1
    A[..., 1, 0] = -N * c(z1) / (2 * e1 ** 3)
    B[..., 1, 0] = -1j * z2 / e1 - N * z1 / (2 * e1 ** 3)
    A[..., 1, 1] = (c(z2) * z3 / (2 * e2) - 1j * c(z1)) / e1
    B[..., 1, 1] = z2 * z3 / (2 * e2 * e1)
    A[..., 1, 2] = e2 / e1
    A[..., 2, 0] = e2 * z3 / e1 - M * c(z1) / (2 * e1 ** 3)
    B[..., 2, 0] = -M * z1 / (2 * e1 ** 3)
    A[..., 2, 1] = (c(z2) * z1 * z3 / (2 * e2) + 1j) / e1
    B[..., 2, 1] = z2 * z1 * z3 / (2 * e2 * e1)
    A[..., 2, 2] = e2 * z1 / e1
    return A, B


def haar_jacobian(z) -> np.ndarray:
    """det d(u, ubar)/d(z, zbar): the factor in du ^ dubar ^ ... = J dz ^ dzbar ^ ...."""
    A, B = wirtinger_u(z)
    top = np.concatenate([A, B], axis=-1)
    bottom = np.concatenate([np.conj(B), np.conj(A)], axis=-1)
    return np.linalg.det(np.concatenate([top, bottom], axis=-2)).real


def bott_samelson_z_prime(z) -> np.ndarray:
    z1, z2, z3 = _split(z)
    e1, e2 = _eps(z1), _eps(z2)
    return np.stack([z1, e1 * z2, (e2 * z3 - 1j * np.conj(z1) * z2) / e1], axis=-1)


def bott_samelson_z_from_prime(zp) -> np.ndarray:
    p1, p2, p3 = _split(zp)
    eta1 = np.sqrt(1 + abs(p1) ** 2)
    eta2 = np.sqrt(1 + abs(p1) ** 2 + abs(p2) ** 2)
    z2 = p2 / eta1
    z3 = (eta1 ** 2 * p3 + 1j * np.conj(p1) * p2) / eta2
    return np.stack([p1, z2, z3], axis=-1)


def bott_samelson_matrix(zp) -> np.ndarray:
    p1, p2, p3 = _split(zp)
    return n_matrix(np.stack([p1, p3, p1 * p3 + 1j * p2], axis=-1))


def load_fixtures() -> dict:
    """The shipped SL(3) golden fixture document."""
    import json
    from importlib import resources

    return json.loads(resources.files("bruhatcells").joinpath("data/sl3_fixtures.json").read_text())
