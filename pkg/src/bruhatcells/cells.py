"""Closed-form geometry on a Schubert cell in the z-coordinates of a reduced word.

Densities are product forms c * prod_j (1+|z_j|^2)^{e_j} dz_j ^ dzbar_j. Constants
keep their complex phase; see ``quad`` for the measure convention used when
integrating.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import matrixlie
from .rootsys import CoWeight, ReducedWord, RootSystem, weyl_ad


def _exact(x):
    """Keep Fractions exact, everything else becomes a Python scalar."""
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return complex(x) if isinstance(x, complex) and x.imag else float(np.real(x))


@dataclass(frozen=True)
class ProductDensity:
    """c * prod_j (1+|z_j|^2)^{e_j} dz_1 ^ dzbar_1 ^ ... ^ dz_l ^ dzbar_l."""

    constant: complex
    exponents: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "constant", complex(self.constant))
        object.__setattr__(self, "exponents", tuple(_exact(e) for e in self.exponents))

    @property
    def length(self) -> int:
        return len(self.exponents)

    def exponent_array(self) -> np.ndarray:
        return np.array([complex(e) for e in self.exponents])

    def evaluate(self, z) -> np.ndarray:
        """Coefficient of dz_1 ^ dzbar_1 ^ ... at z, shape (l,) or (m, l)."""
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.length:
            raise ValueError(f"expected {self.length} coordinates, got {z.shape[-1]}")
        e = self.exponent_array()
        if not np.any(e.imag):
            e = e.real
        vals = np.prod((1 + np.abs(z) ** 2) ** e, axis=-1)
        return self.constant * vals

    def multiply(self, other: "ProductDensity | float | complex") -> "ProductDensity":
        if isinstance(other, ProductDensity):
            if other.length != self.length:
                raise ValueError("densities live on cells of different dimension")
            exps = tuple(a + b for a, b in zip(self.exponents, other.exponents))
            return ProductDensity(self.constant * other.constant, exps)
        return ProductDensity(self.constant * complex(other), self.exponents)

    __mul__ = multiply

    def __rmul__(self, c):
        return self.multiply(c)

    @property
    def integrable(self) -> bool:
        return all(complex(e).real < -1 for e in self.exponents)

    def to_json(self) -> dict:
        def enc(e):
            if isinstance(e, Fraction):
                return str(e) if e.denominator != 1 else int(e)
            if isinstance(e, complex):
                return [e.real, e.imag]
            return e

        return {
            "constant": [self.constant.real, self.constant.imag],
            "exponents": [enc(e) for e in self.exponents],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ProductDensity":
        def dec(e):
            if isinstance(e, str):
                return Fraction(e)
            if isinstance(e, list):
                return complex(*e)
            return Fraction(e) if isinstance(e, int) else e

        return cls(complex(*doc["constant"]), tuple(dec(e) for e in doc["exponents"]))


@dataclass(frozen=True)
class SymplecticFormValue:
    """Coefficients of dz_j ^ dzbar_j of the leaf symplectic form at one point."""

    coeffs: np.ndarray


def _ratio(sys: RootSystem, mu, root) -> Fraction:
    return sys.pairing(mu, root) / sys.norm2(root)


def _log_eps2(z) -> np.ndarray:
    return np.log1p(np.abs(np.asarray(z, dtype=complex)) ** 2)


def a_w_closed(word: ReducedWord, z) -> CoWeight:
    """log a_w(F_w(z)) = sum_j 1/2 log(1+|z_j|^2) Hcheck_{beta_j}."""
    sys = word.system
    L = _log_eps2(z)
    out = np.zeros(L.shape[:-1] + (sys.rank,))
    for j, beta in enumerate(word.betas):
        out += 0.5 * L[..., j, None] * np.array([float(c) for c in sys.coroot(beta)])
    return CoWeight(sys, out)


def character(h: CoWeight, mu) -> np.ndarray:
    """a^mu = exp(mu(log a))."""
    return np.exp(h.evaluate(mu))


def character_density(word: ReducedWord, mu) -> ProductDensity:
    """a_w^mu as a density factor: exponents <<mu,beta_j>>/<<beta_j,beta_j>>."""
    sys = word.system
    return ProductDensity(1, tuple(_ratio(sys, mu, b) for b in word.betas))


def haar_lambda(word: ReducedWord) -> complex:
    sys = word.system
    c = 1 + 0j
    for b in word.betas:
        c *= 1j * float(_ratio(sys, sys.rho, b)) / math.pi
    return c


def haar_density(word: ReducedWord) -> ProductDensity:
    """Bi-invariant Haar density dn on N_w, normalized by int a_w^{-4 rho} dn = 1."""
    sys = word.system
    exps = tuple(2 * _ratio(sys, sys.rho, b) - 1 for b in word.betas)
    return ProductDensity(haar_lambda(word), exps, "dn")


def dn1_factor(word: ReducedWord) -> float:
    sys = word.system
    return math.prod(math.pi / float(sys.pairing(sys.rho, b)) for b in word.betas)


def haar_density_dn1(word: ReducedWord) -> ProductDensity:
    d = haar_density(word)
    return ProductDensity(d.constant * dn1_factor(word), d.exponents, "(dn)_1")


def omega_coefficient(sys: RootSystem, alpha, z) -> np.ndarray:
    """Coefficient i / (<<alpha,alpha>> (1+|z|^2)) of dz ^ dzbar on the leaf for alpha."""
    return 1j / (float(sys.norm2(alpha)) * (1 + np.abs(np.asarray(z, dtype=complex)) ** 2))


def omega_w(word: ReducedWord, z) -> SymplecticFormValue:
    sys = word.system
    z = np.asarray(z, dtype=complex)
    norms = np.array([float(sys.norm2(a)) for a in word.alphas])
    return SymplecticFormValue(1j / (norms * (1 + np.abs(z) ** 2)))


def liouville_density(word: ReducedWord) -> ProductDensity:
    sys = word.system
    c = complex(np.prod([1j / float(sys.norm2(a)) for a in word.alphas]))
    return ProductDensity(c, (Fraction(-1),) * word.length, "mu_w")


def moment_map(word: ReducedWord, z) -> CoWeight:
    """phi_w = sum_j -1/2 log(1+|z_j|^2) Hcheck_{alpha_j}."""
    sys = word.system
    L = _log_eps2(z)
    out = np.zeros(L.shape[:-1] + (sys.rank,))
    for j, alpha in enumerate(word.alphas):
        out -= 0.5 * L[..., j, None] * np.array([float(c) for c in sys.coroot(alpha)])
    return CoWeight(sys, out)


def modular_hamiltonian(word: ReducedWord, z) -> np.ndarray:
    """<phi_w, 2i H_rho>, taken as the real function -sum_j (2<rho,a_j>/<a_j,a_j>) log(1+|z_j|^2)."""
    sys = word.system
    k = np.array([float(2 * _ratio(sys, sys.rho, a)) for a in word.alphas])
    return -(_log_eps2(z) @ k) if word.length else np.zeros(np.shape(z)[:-1])


def kostant_density(word: ReducedWord) -> ProductDensity:
    """Restriction of the Kostant form s^w to its own cell."""
    sys = word.system
    exps = tuple(-2 * _ratio(sys, sys.rho, a) - 1 for a in word.alphas)
    return ProductDensity(liouville_density(word).constant, exps, "s^w")


def su2_bracket(sys: RootSystem, gamma, z) -> np.ndarray:
    """{z, zbar} on the rank-one leaf for the root gamma."""
    z = np.asarray(z, dtype=complex)
    return -1j * float(sys.norm2(gamma)) * (1 + np.abs(z) ** 2)


def killing_cartan(h1: CoWeight, h2: CoWeight) -> np.ndarray:
    """Killing form on the Cartan subalgebra: <<Hcheck_k, H>> = 2 gamma_k(H)/<<gamma_k,gamma_k>>."""
    sys = h1.system
    vals = np.stack(
        [2 * h2.evaluate(sys.simple_root(k + 1)) / float(sys.gram[k][k]) for k in range(sys.rank)],
        axis=-1,
    )
    return np.sum(h1.coeffs * vals, axis=-1)


def _rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def is_longest(word: ReducedWord) -> bool:
    return word.length == len(word.system.positive_roots)


def identity_suite(word: ReducedWord, points, a_source: str = "closed") -> dict:
    """Maximum deviations of the cell identities relating a_w, phi_w, dn, mu_w and s^w.

    Pointwise density identities are compared relatively; the moment-map identity
    absolutely. ``a_source="matrix"`` takes log a_w from the Iwasawa oracle instead
    of the closed form.
    """
    sys = word.system
    z = np.atleast_2d(np.asarray(points, dtype=complex))
    if word.length == 0:
        z = np.zeros((len(z), 0), dtype=complex)
    if a_source == "matrix":
        a = matrixlie.a_w_numeric(word, matrixlie.coordinate_map(word, z))
    else:
        a = a_w_closed(word, z)
    phi = moment_map(word, z)
    mu = liouville_density(word).evaluate(z)
    dn = haar_density(word).evaluate(z)
    s = kostant_density(word).evaluate(z)
    rho = sys.rho
    two_rho = tuple(2 * r for r in rho)
    out = {
        "phi_equals_Ad_w_log_a": float(np.max(np.abs(weyl_ad(word, a).coeffs - phi.coeffs), initial=0.0)),
        "liouville_vs_haar": _rel(dn1_factor(word) * character(a, tuple(-c for c in two_rho)) * dn, mu),
        "kostant_vs_modular": _rel(np.exp(modular_hamiltonian(word, z)) * mu, s),
        "kostant_vs_character": _rel(character(a, word.act_inverse(two_rho)) * mu, s),
    }
    if is_longest(word):
        const = math.prod(math.pi / float(sys.pairing(rho, b)) for b in sys.positive_roots)
        out["longest_kostant_vs_haar"] = _rel(
            const * character(a, tuple(-4 * r for r in rho)) * dn, s
        )
    return out


def _real_coords(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag], axis=-1)


def _complex_coords(x: np.ndarray) -> np.ndarray:
    l = x.shape[-1] // 2
    return x[..., :l] + 1j * x[..., l:]


def _jacobian(f, x: np.ndarray, h: float) -> np.ndarray:
    """Real Jacobian of f: R^d -> R^d by fourth-order central differences."""
    d = x.size
    steps = np.eye(d) * h
    pts = np.concatenate([x + 2 * steps, x + steps, x - steps, x - 2 * steps])
    vals = f(pts)
    f2, f1, m1, m2 = np.split(vals, 4)
    return ((-f2 + 8 * f1 - 8 * m1 + m2) / (12 * h)).T


def left_invariance_defect(word: ReducedWord, n0, z, h: float = 1e-4) -> float:
    """Relative failure of dn to be invariant under z -> coords(n0 F_w(z)).

    Compares rho(T z) |det DT(z)| with rho(z), where rho is the coefficient of the
    Haar density against Lebesgue measure in (Re z, Im z).
    """
    dens = haar_density(word)
    n0 = np.asarray(n0, dtype=complex)
    z = np.asarray(z, dtype=complex)

    def T(x):
        pts = _complex_coords(x)
        return _real_coords(matrixlie.cell_coordinates(word, n0 @ matrixlie.coordinate_map(word, pts)))

    x = _real_coords(z)
    jac = np.linalg.det(_jacobian(T, x, h))
    tz = _complex_coords(T(x[None]))[0]
    lhs = abs(dens.evaluate(tz)) * abs(jac)
    rhs = abs(dens.evaluate(z))
    return abs(lhs - rhs) / rhs


def torus_hamiltonian(word: ReducedWord, z, h: CoWeight) -> np.ndarray:
    """<phi_w, iH> = <<phi_w, H>> under the Killing pairing."""
    return killing_cartan(moment_map(word, z), h)


def torus_action_defect(word: ReducedWord, z, h: CoWeight, step: float = 1e-5) -> float:
    """Max |i_V Omega - d<phi_w, iH>| where V generates z_j -> exp(i theta alpha_j(H)) z_j."""
    sys = word.system
    z = np.asarray(z, dtype=complex)
    l = word.length
    x = _real_coords(z)
    f = lambda pts: torus_hamiltonian(word, _complex_coords(pts), h)[:, None]
    grad = _jacobian(f, x, step)[0]
    rates = np.array([h.evaluate(a) for a in word.alphas])
    # Omega = sum_j w_j dz_j ^ dzbar_j = sum_j (-2i w_j) dx_j ^ dy_j
    c = np.real(-2j * omega_w(word, z).coeffs)
    vx, vy = -rates * z.imag, rates * z.real
    contraction = np.concatenate([-c * vy, c * vx])
    return float(np.max(np.abs(contraction - grad), initial=0.0))
