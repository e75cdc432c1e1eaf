import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate as spi

from bruhatcells import cells, quad
from bruhatcells.cells import ProductDensity
from bruhatcells.errors import DivergenceError
from bruhatcells.rootsys import ReducedWord

from conftest import all_words


@pytest.mark.parametrize("e,expect", [(-2, math.pi), (-3, math.pi / 2), (Fraction(-5, 2), 2 * math.pi / 3)])
def test_radial_integral_values(e, expect):
    assert quad.radial_integral(e)[0] == pytest.approx(expect, rel=1e-15)
    assert quad.radial_integral(e, "quadrature")[0] == pytest.approx(expect, rel=1e-10)


@pytest.mark.parametrize("e", [-2.0, -3.5])
def test_radial_integral_cartesian_oracle(e):
    f = lambda y, x: (1 + x * x + y * y) ** e
    val, _ = spi.dblquad(f, -np.inf, np.inf, -np.inf, np.inf, epsabs=1e-11)
    assert quad.radial_integral(e)[0] == pytest.approx(val, rel=1e-7)


def test_radial_integral_complex_exponent():
    e = complex(-2.5, 1.0)
    v, _ = quad.radial_integral(e, "quadrature")
    assert abs(v - math.pi / (-1 - e)) < 1e-10


@pytest.mark.parametrize("e", [-1, -0.5, 0, complex(-1, 3)])
def test_radial_integral_diverges(e):
    with pytest.raises(DivergenceError):
        quad.radial_integral(e)


def test_integrate_names_first_divergent_coordinate():
    with pytest.raises(DivergenceError) as exc:
        quad.integrate(ProductDensity(1, (-2, -1, 0)))
    assert exc.value.index == 2


def test_integrate_empty_and_rank_one(a2):
    assert quad.integrate(cells.kostant_density(ReducedWord(a2, ()))).value == 1
    for j in (1, 2):
        w = ReducedWord(a2, (j,))
        r = quad.integrate(cells.kostant_density(w))
        # <rho, gamma> = 1/6 for a simple root of sl(3)
        assert abs(r.value - 6 * math.pi) < 1e-12
        assert abs(r.phase - 1) < 1e-15


def test_integral_result_json():
    r = quad.IntegralResult(complex(1.5, -2), "quadrature", 1e-9)
    assert quad.IntegralResult.from_json(r.to_json()) == r
    assert r.magnitude == pytest.approx(2.5)


@pytest.mark.parametrize("n", [3, 4])
def test_haar_normalization(n, a2, a3):
    sys = a2 if n == 3 else a3
    words = all_words(sys)
    if n == 4:
        words = words[::7]
    for idx in words:
        w = ReducedWord(sys, idx)
        d = cells.character_density(w, tuple(-4 * r for r in sys.rho)) * cells.haar_density(w)
        assert abs(quad.integrate(d).value - 1) < 1e-14
        assert abs(quad.integrate(d, "quadrature").value - 1) < 1e-8


def test_c_function_exact(a2):
    w = ReducedWord(a2, (1, 2, 1))
    assert quad.c_function(w, (2, 2)).value == 1
    assert quad.c_function(w, (4, 4)).value == Fraction(1, 8)
    # beta = a2, a1+a2, a1: <<2rho,b>>/<<ilam,b>> with Gram/6
    v = quad.c_function(w, (Fraction(3), Fraction(2))).value
    pair = lambda x, y: (2 * x[0] * y[0] + 2 * x[1] * y[1] - x[0] * y[1] - x[1] * y[0]) / Fraction(6)
    expect = Fraction(1)
    for b in [(0, 1), (1, 1), (1, 0)]:
        expect *= pair((2, 2), b) / pair((3, 2), b)
    assert v == expect


def test_c_function_complex_lambda(a2):
    w = ReducedWord(a2, (2, 1))
    ilam = (complex(2, 1), complex(3, -0.5))
    c = complex(quad.c_function(w, ilam).value)
    q = complex(quad.c_function(w, ilam, "quadrature").value)
    assert abs(c - q) / abs(c) < 1e-6


def test_c_function_quadrature_grid(a3):
    for idx in [(1,), (2, 3), (1, 2, 1), (3, 2, 1, 2)]:
        w = ReducedWord(a3, idx)
        for ilam in [(2, 2, 2), (1, 3, 2), (Fraction(1, 2), 1, 5), (4, 1, 1), (2, 5, 3)]:
            try:
                c = complex(quad.c_function(w, ilam).value)
            except DivergenceError:
                continue
            q = complex(quad.c_function(w, ilam, "quadrature").value)
            assert abs(c - q) / abs(c) < 1e-6


def test_c_function_inadmissible(a2):
    w = ReducedWord(a2, (1, 2, 1))
    with pytest.raises(DivergenceError) as exc:
        quad.c_function(w, (3, -1))
    assert exc.value.index is not None
    # boundary: <<ilam, beta>> = 0 is rejected
    with pytest.raises(DivergenceError):
        quad.c_function(ReducedWord(a2, (1,)), (0, 1))
    with pytest.raises(ValueError):
        quad.c_function(w, (1, 2, 3))


def test_schubert_integral(a2):
    w = ReducedWord(a2, (1, 2, 1))
    assert quad.schubert_integral(w).value == pytest.approx(108 * math.pi ** 3, rel=1e-15)
    q = quad.schubert_integral(w, "quadrature")
    assert abs(q.value - 108 * math.pi ** 3) / (108 * math.pi ** 3) < 1e-8
    for idx in all_words(a2, 1):
        w = ReducedWord(a2, idx)
        assert abs(quad.schubert_via_c_function(w) - quad.schubert_integral(w).value) < 1e-10 * abs(
            quad.schubert_integral(w).value)


def test_monte_carlo_rank_one(a2):
    d = cells.kostant_density(ReducedWord(a2, (1,)))
    r = quad.monte_carlo(d, seed=3, samples=1_000_000)
    assert abs(r.value - 6 * math.pi) <= 3 * r.error_estimate + 1e-9


def test_monte_carlo_haar_normalization(a2):
    w = ReducedWord(a2, (1, 2, 1))
    d = cells.character_density(w, (-4, -4)) * cells.haar_density(w)
    r = quad.monte_carlo(d, seed=11, samples=400_000)
    assert r.error_estimate > 0
    assert abs(r.value - 1) < 3 * r.error_estimate


def test_monte_carlo_determinism(a2):
    d = cells.kostant_density(ReducedWord(a2, (1, 2)))
    a = quad.monte_carlo(d, seed=5, samples=50_000, workers=3, chunk=7_000)
    b = quad.monte_carlo(d, seed=5, samples=50_000, workers=3, chunk=7_000)
    c = quad.monte_carlo(d, seed=6, samples=50_000, workers=3, chunk=7_000)
    assert a == b
    assert a.value != c.value


def test_monte_carlo_errors(a2):
    d = cells.kostant_density(ReducedWord(a2, (1,)))
    with pytest.raises(ValueError):
        quad.monte_carlo(d, samples=0)
    with pytest.raises(ValueError):
        quad.monte_carlo(d, workers=0)
    with pytest.raises(DivergenceError):
        quad.monte_carlo(ProductDensity(1, (-1,)))
