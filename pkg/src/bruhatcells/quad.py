"""Integration of product densities: closed form, adaptive quadrature, Monte Carlo.

Measure convention: dz ^ dzbar = -2i dx ^ dy, so a density c prod (1+|z_j|^2)^{e_j}
dz_j ^ dzbar_j integrates to c (-2i)^l prod_j I(e_j) with
I(e) = int_{R^2} (1+x^2+y^2)^e dx dy = pi / (-1 - e). For the real geometric
densities the phase of this number is +1; ``IntegralResult.phase`` records it.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate as _spi

from . import _kernels
from .cells import ProductDensity, character_density, haar_density, kostant_density
from .errors import DivergenceError
from .rootsys import ReducedWord

METHODS = ("closed_form", "quadrature", "monte_carlo")


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    method: str
    error_estimate: float = 0.0

    @property
    def phase(self) -> complex:
        v = complex(self.value)
        return v / abs(v) if v else 1 + 0j

    @property
    def magnitude(self) -> float:
        return abs(complex(self.value))

    def to_json(self) -> dict:
        v = complex(self.value)
        return {
            "value": [v.real, v.imag],
            "method": self.method,
            "error_estimate": float(self.error_estimate),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "IntegralResult":
        return cls(complex(*doc["value"]), doc["method"], doc["error_estimate"])


def _check_exponent(e, index=None):
    if complex(e).real >= -1:
        where = f" (coordinate {index})" if index is not None else ""
        raise DivergenceError(f"integral diverges: exponent {e} has real part >= -1{where}", index)


def radial_integral(e, method: str = "closed_form"):
    """int_{R^2} (1 + x^2 + y^2)^e dx dy for Re e < -1.

    Returns (value, error_estimate). The quadrature route integrates
    2 pi r (1+r^2)^e over [0, inf) with QUADPACK's infinite-interval rule.
    """
    _check_exponent(e)
    if method == "closed_form":
        if isinstance(e, (Fraction, int)):
            return math.pi / float(-1 - Fraction(e)), 0.0
        return math.pi / (-1 - e), 0.0
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    e = complex(e)

    def part(fn):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", _spi.IntegrationWarning)
            return _spi.quad(fn, 0, np.inf, epsabs=0, epsrel=1e-13, limit=500)

    re, re_err = part(lambda r: 2 * math.pi * r * ((1 + r * r) ** e).real)
    if e.imag == 0:
        return re, re_err
    im, im_err = part(lambda r: 2 * math.pi * r * ((1 + r * r) ** e).imag)
    return complex(re, im), math.hypot(re_err, im_err)


def _prefactor(d: ProductDensity) -> complex:
    return d.constant * (-2j) ** d.length


def integrate(d: ProductDensity, method: str = "closed_form") -> IntegralResult:
    """Integral of ``d`` over C^l; raises DivergenceError naming the first bad coordinate."""
    for j, e in enumerate(d.exponents, start=1):
        _check_exponent(e, j)
    if method == "monte_carlo":
        return monte_carlo(d, seed=0, samples=100_000)
    value = _prefactor(d)
    err2 = 0.0
    parts = [radial_integral(e, method) for e in d.exponents]
    for v, _ in parts:
        value *= v
    if method == "quadrature":
        for v, err in parts:
            err2 += (err / abs(v)) ** 2
    return IntegralResult(value, method, abs(value) * math.sqrt(err2))


def _as_weight(word: ReducedWord, coeffs) -> tuple:
    if len(coeffs) != word.system.rank:
        raise ValueError(f"expected {word.system.rank} coefficients, got {len(coeffs)}")
    out = []
    for c in coeffs:
        if isinstance(c, complex):
            out.append(Fraction(c.real) if c.imag == 0 else c)
        else:
            out.append(Fraction(c))
    return tuple(out)


def _check_admissible(word: ReducedWord, ilam) -> None:
    for j, beta in enumerate(word.betas, start=1):
        p = word.system.pairing(ilam, beta)
        if complex(p).real <= 0:
            raise DivergenceError(
                f"c-function integral diverges: Re<<i lambda, beta_{j}>> = {complex(p).real:g} <= 0", j
            )


def c_function(word: ReducedWord, ilam: Sequence, method: str = "closed_form") -> IntegralResult:
    """c_{w^{-1}}(lambda) = int_{N_w} a_w(n)^{-(i lambda + 2 rho)} dn.

    ``ilam`` gives i*lambda directly, in the simple-root basis (complex allowed).
    Closed form: prod_j <<2 rho, beta_j>> / <<i lambda, beta_j>>, exact when the
    input is rational.
    """
    sys = word.system
    ilam = _as_weight(word, ilam)
    _check_admissible(word, ilam)
    if method == "closed_form":
        val = Fraction(1)
        for beta in word.betas:
            val = val * (2 * sys.pairing(sys.rho, beta)) / sys.pairing(ilam, beta)
        value = val if isinstance(val, Fraction) else complex(val)
        return IntegralResult(value, method, 0.0)
    shift = tuple(-(a + 2 * r) for a, r in zip(ilam, sys.rho))
    return integrate(character_density(word, shift) * haar_density(word), method)


def schubert_integral(word: ReducedWord, method: str = "closed_form") -> IntegralResult:
    """int over the cell of s^w = prod_j pi / <<rho, alpha_j>>."""
    sys = word.system
    if method == "closed_form":
        v = math.prod(math.pi / float(sys.pairing(sys.rho, a)) for a in word.alphas)
        return IntegralResult(complex(v), method, 0.0)
    return integrate(kostant_density(word), method)


def schubert_via_c_function(word: ReducedWord) -> complex:
    """prod_j (pi/<<rho,beta_j>>) * c(i lambda = -2 w^{-1} rho)."""
    sys = word.system
    ilam = tuple(-2 * c for c in word.act_inverse(sys.rho))
    factor = math.prod(math.pi / float(sys.pairing(sys.rho, b)) for b in word.betas)
    return factor * complex(c_function(word, ilam).value)


def _mc_chunk(exps: np.ndarray, seed_seq: np.random.SeedSequence, n: int):
    rng = np.random.default_rng(seed_seq)
    u = rng.random((n, exps.size))
    # proposal (1/pi)(1+r^2)^-2 on R^2: P(r^2 <= t) = t/(1+t); the integrand is
    # radial so the angle never enters the weight
    r2 = u / (1.0 - u)
    if np.iscomplexobj(exps):
        w = np.prod(np.pi * (1.0 + r2) ** (exps + 2.0), axis=1)
    else:
        w = _kernels.mc_weights(r2, exps)
    return w.sum(), float(np.sum(np.abs(w) ** 2))


def monte_carlo(d: ProductDensity, seed: int = 0, samples: int = 1_000_000, workers: int = 1,
                chunk: int = 250_000) -> IntegralResult:
    """Importance-sampled integral with one seeded stream per worker.

    The result depends only on (seed, samples, workers). Variance is finite when
    every exponent has real part below -3/2.
    """
    if samples <= 0:
        raise ValueError("monte_carlo needs a positive sample count")
    if workers <= 0:
        raise ValueError("workers must be positive")
    for j, e in enumerate(d.exponents, start=1):
        _check_exponent(e, j)
    exps = d.exponent_array()
    if not np.any(exps.imag):
        exps = exps.real.astype(float)
    streams = np.random.SeedSequence(seed).spawn(workers)
    counts = [samples // workers + (k < samples % workers) for k in range(workers)]

    def run(k):
        ss = streams[k]
        total, total2, left = 0j, 0.0, counts[k]
        subs = ss.spawn(max(1, -(-left // chunk)))
        for sub in subs:
            m = min(chunk, left)
            if m <= 0:
                break
            s1, s2 = _mc_chunk(exps, sub, m)
            total += s1
            total2 += s2
            left -= m
        return total, total2

    if workers == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(workers)))
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / samples
    var = max(s2 / samples - abs(mean) ** 2, 0.0)
    pre = _prefactor(d)
    return IntegralResult(pre * mean, "monte_carlo", abs(pre) * math.sqrt(var / samples))
