import math
from fractions import Fraction

import numpy as np
import pytest

from bruhatcells import cells, matrixlie as ml
from bruhatcells.cells import ProductDensity
from bruhatcells.rootsys import CoWeight, ReducedWord

from conftest import all_words, disc_points


def perm_roots(idx):
    """(alpha_j, beta_j) as index pairs (a, b) meaning e_a - e_b, from permutations."""

    def act(seq, pair):
        a, b = pair
        for i in reversed(seq):
            swap = {i: i + 1, i + 1: i}
            a, b = swap.get(a, a), swap.get(b, b)
        return a, b

    alphas = [act(idx[:j], (i, i + 1)) for j, i in enumerate(idx)]
    betas = [act(idx[j + 1:][::-1], (i, i + 1)) for j, i in enumerate(idx)]
    return alphas, betas


def height(pair):
    a, b = pair
    assert a < b
    return b - a


def test_perm_oracle_matches_root_sequences(a3):
    for idx in all_words(a3, 1):
        w = ReducedWord(a3, idx)
        alphas, betas = perm_roots(idx)
        assert [sum(a) for a in w.alphas] == [height(p) for p in alphas]
        assert [sum(b) for b in w.betas] == [height(p) for p in betas]


@pytest.mark.parametrize("n", [3, 4])
def test_density_exponents_from_heights(n, a2, a3):
    sys = a2 if n == 3 else a3
    for idx in all_words(sys, 1):
        w = ReducedWord(sys, idx)
        alphas, betas = perm_roots(idx)
        assert cells.kostant_density(w).exponents == tuple(Fraction(-height(p) - 1) for p in alphas)
        assert cells.haar_density(w).exponents == tuple(Fraction(height(p) - 1) for p in betas)
        assert cells.liouville_density(w).exponents == (-1,) * len(idx)


def test_longest_a2_constants(a2):
    w = ReducedWord(a2, (1, 2, 1))
    assert cells.kostant_density(w).exponents == (-2, -3, -2)
    assert cells.haar_density(w).exponents == (0, 1, 0)
    assert np.isclose(cells.haar_lambda(w), -1j / (4 * math.pi ** 3))
    # <<alpha, alpha>> = 1/3 for every root of sl(3)
    assert np.isclose(cells.liouville_density(w).constant, (3j) ** 3)
    assert np.isclose(cells.dn1_factor(w), 6 * math.pi * 3 * math.pi * 6 * math.pi)


def test_empty_word(a2):
    w = ReducedWord(a2, ())
    for d in (cells.haar_density(w), cells.kostant_density(w), cells.liouville_density(w)):
        assert d.exponents == () and d.constant == 1
        assert d.evaluate(np.zeros((4, 0))).tolist() == [1, 1, 1, 1]
    assert cells.identity_suite(w, np.zeros((3, 0)))["kostant_vs_character"] == 0


def test_product_density_algebra(a2, rng):
    w = ReducedWord(a2, (1, 2))
    d = cells.haar_density(w)
    c = cells.character_density(w, (Fraction(1, 2), Fraction(-1)))
    z = disc_points(rng, 2, 10)
    assert np.allclose((d * c).evaluate(z), d.evaluate(z) * c.evaluate(z))
    assert np.allclose((2 * d).evaluate(z), 2 * d.evaluate(z))
    assert ProductDensity.from_json(d.to_json()) == d
    cplx = ProductDensity(1j, (complex(-2, 0.5), Fraction(-3, 2)))
    assert ProductDensity.from_json(cplx.to_json()) == cplx
    assert cplx.integrable and not cells.haar_density(w).integrable
    with pytest.raises(ValueError):
        d.evaluate(np.zeros(3))
    with pytest.raises(ValueError):
        d * cells.haar_density(ReducedWord(a2, (1,)))


def test_character_density_matches_character(a3, rng):
    w = ReducedWord(a3, (2, 1, 3, 2))
    mu = (Fraction(1), Fraction(-2), Fraction(1, 3))
    z = disc_points(rng, 4, 30)
    direct = cells.character(cells.a_w_closed(w, z), mu)
    assert np.allclose(cells.character_density(w, mu).evaluate(z), direct, rtol=1e-13)


def test_a_w_closed_rank_one(a1, rng):
    w = ReducedWord(a1, (1,))
    z = disc_points(rng, 1, 20)
    assert np.allclose(cells.a_w_closed(w, z).coeffs[:, 0], 0.5 * np.log1p(abs(z[:, 0]) ** 2))


def test_moment_map_rank_one(a1):
    w = ReducedWord(a1, (1,))
    phi = cells.moment_map(w, np.array([[2j]]))
    assert np.allclose(phi.coeffs, [[-0.5 * math.log(5)]])


def test_omega_liouville(a2, rng):
    w = ReducedWord(a2, (1, 2, 1))
    z = disc_points(rng, 3, 10)
    om = cells.omega_w(w, z).coeffs
    # mu_w = Omega^l / l! is the product of the diagonal coefficients
    assert np.allclose(np.prod(om, axis=1), cells.liouville_density(w).evaluate(z), rtol=1e-14)


@pytest.mark.parametrize("source", ["closed", "matrix"])
def test_identities_all_a2_words(a2, rng, source):
    for idx in all_words(a2):
        w = ReducedWord(a2, idx)
        tol = 1e-12 if source == "closed" else 1e-10
        res = cells.identity_suite(w, disc_points(rng, len(idx), 100), source)
        assert max(res.values()) < tol, (idx, res)
        assert ("longest_kostant_vs_haar" in res) == (len(idx) == 3)


def test_identities_a3_sample(a3, rng):
    words = all_words(a3, 1)
    for k in rng.choice(len(words), 10, replace=False):
        w = ReducedWord(a3, words[k])
        res = cells.identity_suite(w, disc_points(rng, w.length, 50))
        assert max(res.values()) < 1e-12, (w.indices, res)


def test_kostant_density_not_haar_for_short_word(a2, rng):
    # the longest-cell relation is special to w_0
    w = ReducedWord(a2, (1, 2))
    z = disc_points(rng, 2, 5)
    a = cells.a_w_closed(w, z)
    guess = cells.character(a, (-2, -2)) * cells.haar_density(w).evaluate(z)
    assert not np.allclose(guess * cells.dn1_factor(w), cells.kostant_density(w).evaluate(z))


def test_su2_reciprocity(a3, rng):
    z = disc_points(rng, 1, 500, 10.0)[:, 0]
    for a in a3.positive_roots:
        prod = cells.su2_bracket(a3, a, z) * cells.omega_coefficient(a3, a, z)
        assert np.max(np.abs(prod - 1)) < 1e-14


def test_killing_cartan_symmetric(a3, rng):
    h1, h2 = CoWeight(a3, rng.normal(size=3)), CoWeight(a3, rng.normal(size=3))
    assert np.isclose(cells.killing_cartan(h1, h2), cells.killing_cartan(h2, h1))
    d1, d2 = h1.diagonal(), h2.diagonal()
    assert np.isclose(cells.killing_cartan(h1, h2), 2 * 4 * np.sum(d1 * d2))


@pytest.mark.parametrize("idx", [(1,), (2, 1), (1, 2, 1)])
def test_left_invariance(a2, rng, idx):
    w = ReducedWord(a2, idx)
    for _ in range(5):
        n0 = ml.coordinate_map(w, disc_points(rng, w.length, 1, 2.0)[0])
        z = disc_points(rng, w.length, 1, 2.0)[0]
        assert cells.left_invariance_defect(w, n0, z) < 1e-6


def test_left_invariance_detects_wrong_density(a2, rng, monkeypatch):
    w = ReducedWord(a2, (1, 2, 1))
    n0 = ml.coordinate_map(w, np.array([1 + 1j, -0.5, 0.7j]))
    z = np.array([0.3, 1j, -0.2 + 0.4j])
    monkeypatch.setattr(cells, "haar_density", cells.liouville_density)
    assert cells.left_invariance_defect(w, n0, z) > 1e-3


def test_torus_action_generated_by_moment_map(a3, rng):
    for idx in [(1,), (2, 3, 2), (1, 2, 1, 3, 2, 1)]:
        w = ReducedWord(a3, idx)
        for _ in range(3):
            h = CoWeight(a3, rng.normal(size=3))
            assert cells.torus_action_defect(w, disc_points(rng, w.length, 1, 2.0)[0], h) < 1e-6
