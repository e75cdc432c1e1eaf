"""SL(n, C) realization: Iwasawa decomposition, the circ action, cell coordinates.

Matrix arguments may be single ``(n, n)`` arrays or stacks ``(m, n, n)``; cell
points may be ``(l,)`` or ``(m, l)``. Outputs follow the input's batch shape.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IwasawaError
from .rootsys import CoWeight, ReducedWord, RootSystem

DET_TOL = 1e-8


@dataclass(frozen=True)
class IwasawaTriple:
    k: np.ndarray
    a: np.ndarray
    n: np.ndarray

    @property
    def log_a(self) -> np.ndarray:
        return np.log(np.real(np.diagonal(self.a, axis1=-2, axis2=-1)))


def _batch(g):
    g = np.asarray(g, dtype=complex)
    single = g.ndim == 2
    return (g[None] if single else g), single


def _unbatch(x, single):
    return x[0] if single else x


def iwasawa(g, tol: float = 1e-12) -> IwasawaTriple:
    """g = k a n with k special unitary, a positive diagonal, n unit upper triangular."""
    gb, single = _batch(g)
    det = np.linalg.det(gb)
    if np.any(np.abs(det - 1) > DET_TOL * np.maximum(1.0, np.abs(det))):
        raise IwasawaError(f"matrix is not unimodular (det = {det[np.argmax(np.abs(det - 1))]})")
    q, r, min_ratio = _kernels.qr_positive(gb)
    if not min_ratio > 1e-13:
        raise IwasawaError("matrix is numerically singular")
    d = np.real(np.diagonal(r, axis1=-2, axis2=-1))
    a = np.zeros_like(r)
    idx = np.arange(r.shape[-1])
    a[:, idx, idx] = d
    nn = r / d[:, :, None]
    recon = q @ r
    err = np.max(np.abs(recon - gb)) / max(1.0, float(np.max(np.abs(gb))))
    if err > tol:
        raise IwasawaError(f"reconstruction error {err:.2e} exceeds {tol:.0e}")
    return IwasawaTriple(_unbatch(q, single), _unbatch(a, single), _unbatch(nn, single))


def iwasawa_cholesky(g) -> IwasawaTriple:
    """Second route: a n is the upper Cholesky factor of g^H g."""
    gb, single = _batch(g)
    lower = np.linalg.cholesky(np.conj(np.swapaxes(gb, -1, -2)) @ gb)
    r = np.conj(np.swapaxes(lower, -1, -2))
    d = np.real(np.diagonal(r, axis1=-2, axis2=-1))
    a = np.zeros_like(r)
    idx = np.arange(r.shape[-1])
    a[:, idx, idx] = d
    k = gb @ np.linalg.inv(r)
    return IwasawaTriple(_unbatch(k, single), _unbatch(a, single), _unbatch(r / d[:, :, None], single))


def circ(g, k) -> np.ndarray:
    """g o k: the K-component of g k."""
    return iwasawa(np.asarray(g) @ np.asarray(k)).k


def gamma_dot(sys: RootSystem, j: int) -> np.ndarray:
    """Representative in SU(n) of the simple reflection sigma_j."""
    sys._check_index(j)
    m = np.eye(sys.n, dtype=complex)
    p = j - 1
    m[p, p] = m[p + 1, p + 1] = 0
    m[p, p + 1] = m[p + 1, p] = 1j
    return m


def w_dot(word: ReducedWord) -> np.ndarray:
    sys = word.system
    m = np.eye(sys.n, dtype=complex)
    for i in word.indices:
        m = m @ gamma_dot(sys, i)
    return m


def n_z(sys: RootSystem, j: int, z) -> np.ndarray:
    """exp(z E_{j,j+1}) for scalar or 1-d array ``z``."""
    sys._check_index(j)
    z = np.asarray(z, dtype=complex)
    m = np.broadcast_to(np.eye(sys.n, dtype=complex), z.shape + (sys.n, sys.n)).copy()
    m[..., j - 1, j] = z
    return m


def split_simple(u, j: int, tol: float = 1e-12):
    """Decompose unit upper triangular u = n_gamma n_hat along N = N_gamma N_hat."""
    ub, single = _batch(u)
    n = ub.shape[-1]
    lower = np.tril(ub, -1)
    diag = np.diagonal(ub, axis1=-2, axis2=-1)
    scale = max(1.0, float(np.max(np.abs(ub))))
    if np.max(np.abs(lower), initial=0) > tol * scale or np.max(np.abs(diag - 1)) > tol * scale:
        raise ValueError("split_simple expects a unit upper triangular matrix")
    c = ub[:, j - 1, j]
    ng = np.broadcast_to(np.eye(n, dtype=complex), ub.shape).copy()
    ng[:, j - 1, j] = c
    inv = ng.copy()
    inv[:, j - 1, j] = -c
    nh = inv @ ub
    return _unbatch(ng, single), _unbatch(nh, single)


def _points(word: ReducedWord, z):
    z = np.asarray(z, dtype=complex)
    single = z.ndim == 1
    zb = z[None] if single else z
    if zb.shape[-1] != word.length:
        raise ValueError(f"expected {word.length} coordinates, got {zb.shape[-1]}")
    return zb, single


def _conj_diag(m, d):
    """a^{-1} m a for a = diag(d)."""
    return m * d[..., None, :] / d[..., :, None]


@dataclass
class _Recursion:
    n: np.ndarray          # F_w(z), shape (m, n, n)
    coeffs: np.ndarray     # Bott-Samelson coordinates z', shape (m, l)


def _run_recursion(word: ReducedWord, zb: np.ndarray) -> _Recursion:
    sys = word.system
    size = sys.n
    m = zb.shape[0]
    eye = np.broadcast_to(np.eye(size, dtype=complex), (m, size, size))
    cur = eye.copy()
    wd1 = np.eye(size, dtype=complex)
    coeffs = np.zeros_like(zb)
    for k, i in enumerate(word.indices):
        # n' = F_{w_1}(z_1..z_{k}); Iwasawa of n' w_1 gives a_{w_1}(n') and m'
        tri = iwasawa(cur @ wd1) if k else IwasawaTriple(eye, eye, eye)
        d = np.real(np.diagonal(tri.a, axis1=-2, axis2=-1))
        m_inv = np.linalg.inv(tri.n)
        m_gamma, _ = split_simple(m_inv, i, tol=1e-8)
        x_prime = m_gamma @ _conj_diag(n_z(sys, i, zb[:, k]), d)
        coeffs[:, k] = x_prime[:, i - 1, i]
        cur = cur @ wd1 @ x_prime @ np.conj(wd1.T)
        wd1 = wd1 @ gamma_dot(sys, i)
    return _Recursion(cur, coeffs)


def coordinate_map(word: ReducedWord, z) -> np.ndarray:
    """F_w: the unique n in N_w with n o w_dot = prod_j (n_{z_j} o gamma_dot_j).

    Built left to right: each step takes the Iwasawa data of the prefix element,
    splits (m')^{-1} along N = N_gamma N_hat and appends the conjugated factor.
    """
    zb, single = _points(word, z)
    out = _run_recursion(word, zb).n
    _check_support(word, out)
    return _unbatch(out, single)


def _support_mask(word: ReducedWord) -> np.ndarray:
    sys = word.system
    mask = np.eye(sys.n, dtype=bool)
    for a in word.alphas:
        mask[sys.matrix_position(a)] = True
    return mask


def _check_support(word: ReducedWord, nb: np.ndarray, tol: float = 1e-10) -> None:
    mask = _support_mask(word)
    scale = max(1.0, float(np.max(np.abs(nb))))
    off = np.max(np.abs(nb[:, ~mask]), initial=0.0)
    diag = np.max(np.abs(np.diagonal(nb, axis1=-2, axis2=-1) - 1), initial=0.0)
    if off > tol * scale or diag > tol * scale:
        raise ArithmeticError(f"coordinate map left N_w (off-support {off:.2e})")


def support_deviation(word: ReducedWord, n) -> float:
    """Largest entry of ``n`` outside the positions of R+_w (diagonal compared to 1)."""
    nb, _ = _batch(n)
    mask = _support_mask(word)
    off = np.max(np.abs(nb[:, ~mask]), initial=0.0)
    diag = np.max(np.abs(np.diagonal(nb, axis1=-2, axis2=-1) - 1), initial=0.0)
    return float(max(off, diag))


def su2_circ_factor(sys: RootSystem, j: int, z) -> np.ndarray:
    """n_z o gamma_dot_j in closed form (embedded SU(2) matrix)."""
    z = np.asarray(z, dtype=complex)
    eps = np.sqrt(1 + np.abs(z) ** 2)
    m = np.broadcast_to(np.eye(sys.n, dtype=complex), z.shape + (sys.n, sys.n)).copy()
    p = j - 1
    m[..., p, p] = 1j * z / eps
    m[..., p, p + 1] = 1j / eps
    m[..., p + 1, p] = 1j / eps
    m[..., p + 1, p + 1] = -1j * np.conj(z) / eps
    return m


def _lu_unit_lower(g: np.ndarray) -> np.ndarray:
    """Unit lower triangular factor of g = L U (no pivoting), batched."""
    u = g.copy()
    m, n, _ = u.shape
    lo = np.broadcast_to(np.eye(n, dtype=complex), u.shape).copy()
    for k in range(n - 1):
        piv = u[:, k, k]
        if np.min(np.abs(piv)) < 1e-300:
            raise ArithmeticError("zero pivot in Bruhat factorization")
        f = u[:, k + 1:, k] / piv[:, None]
        lo[:, k + 1:, k] = f
        u[:, k + 1:, :] -= f[:, :, None] * u[:, k:k + 1, :]
    return lo


def coordinate_map_oracle(word: ReducedWord, z) -> np.ndarray:
    """F_w by direct Bruhat factorization of the product of SU(2) factors.

    With k = prod_j (n_{z_j} o gamma_dot_j), the element w_dot^{-1} k factors as
    L U where L = w_dot^{-1} n w_dot is unit lower triangular; hence
    n = w_dot L w_dot^{-1}. No Iwasawa step or recursion is involved.
    """
    zb, single = _points(word, z)
    sys = word.system
    k = np.broadcast_to(np.eye(sys.n, dtype=complex), (zb.shape[0], sys.n, sys.n)).copy()
    for j, i in enumerate(word.indices):
        k = k @ su2_circ_factor(sys, i, zb[:, j])
    wd = w_dot(word)
    lo = _lu_unit_lower(np.conj(wd.T) @ k)
    return _unbatch(wd @ lo @ np.conj(wd.T), single)


def cell_coordinates(word: ReducedWord, n) -> np.ndarray:
    """Inverse of ``coordinate_map``: the z-coordinates of n in N_w."""
    nb, single = _batch(n)
    sys = word.system
    l = word.length
    m = nb.shape[0]
    prefixes = [None] * (l + 1)
    prefixes[l] = nb
    wdots = [np.eye(sys.n, dtype=complex)]
    for i in word.indices:
        wdots.append(wdots[-1] @ gamma_dot(sys, i))
    targets = np.zeros((m, l), dtype=complex)
    for k in range(l, 0, -1):
        p, q = sys.matrix_position(word.alphas[k - 1])
        u = prefixes[k][:, p, q]
        x_inv = np.broadcast_to(np.eye(sys.n, dtype=complex), nb.shape).copy()
        x_inv[:, p, q] = -u
        prefixes[k - 1] = prefixes[k] @ x_inv
        x = x_inv.copy()
        x[:, p, q] = u
        i = word.indices[k - 1]
        targets[:, k - 1] = (np.conj(wdots[k - 1].T) @ x @ wdots[k - 1])[:, i - 1, i]
    z = np.zeros((m, l), dtype=complex)
    for k in range(l):
        i = word.indices[k]
        if k:
            tri = iwasawa(prefixes[k] @ wdots[k])
            d = np.real(np.diagonal(tri.a, axis1=-2, axis2=-1))
            mg, _ = split_simple(np.linalg.inv(tri.n), i, tol=1e-8)
            shift = mg[:, i - 1, i]
            # a^{-gamma_i} = a_{i+1} / a_i
            scale = d[:, i] / d[:, i - 1]
        else:
            shift, scale = 0.0, 1.0
        z[:, k] = (targets[:, k] - shift) / scale
    return _unbatch(z, single)


def a_w_numeric(word: ReducedWord, n, wdot=None) -> CoWeight:
    """log of the A-part of w_dot^{-1} n w_dot, in simple-coroot coordinates."""
    nb, single = _batch(n)
    wd = w_dot(word) if wdot is None else np.asarray(wdot, dtype=complex)
    tri = iwasawa(np.linalg.inv(wd) @ nb @ wd)
    h = CoWeight.from_diagonal(word.system, tri.log_a)
    return CoWeight(word.system, _unbatch(h.coeffs, single))


def torus_character(sys: RootSystem, t, root) -> complex:
    """t^alpha for t = diag(t_1..t_n) in the maximal torus."""
    t = np.asarray(t, dtype=complex)
    p, q = sys.matrix_position(root)
    return t[..., p] / t[..., q]


def t_conjugate(word: ReducedWord, t, z) -> np.ndarray:
    """The torus action in z-coordinates: z_j -> t^{alpha_j} z_j."""
    z = np.asarray(z, dtype=complex)
    t = np.asarray(t, dtype=complex)
    sys = word.system
    chars = np.stack([torus_character(sys, t, a) for a in word.alphas], axis=-1) if word.length else np.zeros(t.shape[:-1] + (0,))
    return chars * z


def random_torus(sys: RootSystem, rng: np.random.Generator, size=None) -> np.ndarray:
    """Random diagonal entries of an element of T (unit modulus, product 1)."""
    shape = (() if size is None else (size,)) + (sys.n,)
    theta = rng.uniform(0, 2 * np.pi, shape)
    theta -= theta.mean(axis=-1, keepdims=True)
    return np.exp(1j * theta)


def bott_samelson_map(word: ReducedWord, zp) -> np.ndarray:
    """F'_w(z') = n(z'_1) gamma_dot_1 ... n(z'_l) gamma_dot_l w_dot^{-1}."""
    zb, single = _points(word, zp)
    sys = word.system
    g = np.broadcast_to(np.eye(sys.n, dtype=complex), (zb.shape[0], sys.n, sys.n)).copy()
    for j, i in enumerate(word.indices):
        g = g @ n_z(sys, i, zb[:, j]) @ gamma_dot(sys, i)
    return _unbatch(g @ np.conj(w_dot(word).T), single)


def bott_samelson_change(word: ReducedWord, z) -> np.ndarray:
    """I_w: z' with z'_l = m(z_1..z_{l-1}) + a_{w_1}(n')^{-gamma_l} z_l, recursively."""
    zb, single = _points(word, z)
    return _unbatch(_run_recursion(word, zb).coeffs, single)


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_json(doc) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in doc])
