from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from bruhatcells.errors import InvalidRankError, NotReducedError
from bruhatcells.rootsys import (
    CoWeight,
    ReducedWord,
    RootSystem,
    alpha_sequence,
    beta_sequence,
    build_type_a,
    inversion_set,
    is_reduced,
    pairing,
    reduced_words,
    reflect,
    weyl_ad,
)

from conftest import all_words


def killing_gram(n):
    """Gram matrix of simple roots from kappa(H, H') = 2n tr(H H') on diagonal sl(n)."""
    # H_gamma for gamma = e_i - e_{i+1} is (E_ii - E_{i+1,i+1}) / (2n) under kappa
    hs = []
    for i in range(n - 1):
        d = [F(0)] * n
        d[i], d[i + 1] = F(1, 2 * n), F(-1, 2 * n)
        hs.append(d)
    return [[2 * n * sum(a * b for a, b in zip(x, y)) for y in hs] for x in hs]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gram_matches_killing_form(n):
    sys = build_type_a(n)
    assert [list(r) for r in sys.gram] == killing_gram(n)
    assert all(sys.gram[i][i] == F(1, n) for i in range(n - 1))


def test_a1_gram(a1):
    assert a1.gram == ((F(1, 2),),)
    assert len(a1.positive_roots) == 1


def test_rank_errors():
    with pytest.raises(InvalidRankError):
        build_type_a(1)


def test_rho_pairings(a2):
    top = (F(1), F(1))
    assert a2.rho == top
    assert pairing(a2, a2.rho, top) == F(1, 3)
    for i in (1, 2):
        g = a2.simple_root(i)
        assert 2 * pairing(a2, a2.rho, g) / a2.norm2(g) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rho_is_half_sum_and_simple_ratio(n):
    sys = build_type_a(n)
    s = [sum(col) / 2 for col in zip(*sys.positive_roots)]
    assert list(sys.rho) == s
    for i in range(1, n):
        g = sys.simple_root(i)
        assert 2 * sys.pairing(sys.rho, g) / sys.norm2(g) == 1


def test_cartan_and_gram_invariants(a3):
    c = np.array(a3.cartan)
    assert np.all(np.diag(c) == 2)
    assert np.all(c[~np.eye(3, dtype=bool)] <= 0)
    g = a3.gram_array
    assert np.allclose(g, g.T)
    assert np.all(np.linalg.eigvalsh(g) > 0)


def test_pairing_bilinear_and_errors(a2):
    a, b = a2.simple_root(1), a2.simple_root(2)
    assert pairing(a2, a, a) == F(1, 3)
    assert pairing(a2, (0, 0), b) == 0
    assert pairing(a2, a, b) == pairing(a2, b, a)
    assert pairing(a2, (F(2), F(3)), b) == 2 * pairing(a2, a, b) + 3 * pairing(a2, b, b)
    with pytest.raises(ValueError):
        pairing(a2, (1, 0, 0), b)


def test_reflections(a2):
    a1_, a2_ = a2.simple_root(1), a2.simple_root(2)
    assert reflect(a2, a1_, a1_) == (-1, 0)
    assert reflect(a2, a1_, a2_) == (1, 1)
    x = (F(2, 3), F(-5, 7))
    assert reflect(a2, a2_, reflect(a2, a2_, x)) == x
    with pytest.raises(ValueError):
        reflect(a2, (0, 0), x)


def test_sequences_longest(a2):
    w = ReducedWord(a2, (1, 2, 1))
    assert alpha_sequence(w) == ((1, 0), (1, 1), (0, 1))
    assert beta_sequence(w) == ((0, 1), (1, 1), (1, 0))


def test_length_one(a3):
    for i in (1, 2, 3):
        w = ReducedWord(a3, (i,))
        assert w.alphas == (a3.simple_root(i),) == w.betas


def test_not_reduced(a2):
    assert not is_reduced(a2, (1, 1))
    with pytest.raises(NotReducedError) as exc:
        ReducedWord(a2, (1, 2, 1, 2))
    assert exc.value.position == 4
    with pytest.raises(NotReducedError) as exc:
        ReducedWord(a2, (1, 1))
    assert exc.value.position == 2
    assert is_reduced(a2, (1, 2, 1))
    assert is_reduced(a2, ())
    with pytest.raises(IndexError):
        is_reduced(a2, (3,))


def _brute_reduced(sys, word):
    """Reduced iff the word length equals the number of inversions."""
    return len(inversion_set(sys, word)) == len(word)


@pytest.mark.parametrize("n", [3, 4])
def test_is_reduced_exhaustive(n):
    sys = build_type_a(n)
    for length in range(0, 5):
        for word in product(range(1, n), repeat=length):
            assert is_reduced(sys, word) == _brute_reduced(sys, word)


@pytest.mark.parametrize("n", [3, 4])
def test_alphas_are_inversion_set(n):
    sys = build_type_a(n)
    words = all_words(sys)
    top = len(sys.positive_roots)
    brute = [w for k in range(top + 1) for w in product(range(1, n), repeat=k) if _brute_reduced(sys, w)]
    assert sorted(words) == sorted(brute)
    for idx in words:
        w = ReducedWord(sys, idx)
        assert set(w.alphas) == inversion_set(sys, idx)
        assert len(set(w.alphas)) == len(idx)
        for j, (a, b) in enumerate(zip(w.alphas, w.betas)):
            assert b == tuple(-c for c in w.act_inverse(a))
            assert sys.norm2(a) == sys.norm2(b) == sys.norm2(sys.simple_root(idx[j]))
        if idx:
            assert w.betas[-1] == sys.simple_root(idx[-1])
        # beta_j = sigma_l ... sigma_{j+1} (gamma_j)
        for j in range(len(idx)):
            x = sys.simple_root(idx[j])
            for i in idx[j + 1:]:
                x = sys.simple_reflection(i, x)
            assert x == w.betas[j]


def test_inverse_word_swaps_sequences(a2):
    for idx in all_words(a2):
        w = ReducedWord(a2, idx)
        assert set(w.betas) == set(w.inverse().alphas)


def test_reduced_word_counts(a2, a3):
    assert len(all_words(a2)) == 7  # e, s1, s2, s1s2, s2s1 and two words for w0
    elements = {}
    for idx in all_words(a3):
        w = ReducedWord(a3, idx)
        key = tuple(w.act(a3.simple_root(i)) for i in (1, 2, 3))
        elements.setdefault(key, []).append(w)
    assert len(elements) == 24
    # two reduced words for one element share the inversion set but not always its order
    for ws in elements.values():
        assert len({frozenset(w.alphas) for w in ws}) == 1
        assert all(ws[0].same_element(w) for w in ws)
    longest = [ws for ws in elements.values() if len(ws[0]) == 6][0]
    assert len(longest) == 16
    assert len({w.alphas for w in longest}) > 1


def test_json_roundtrip(a3):
    doc = a3.to_json()
    assert doc["gram"][0] == ["1/4", "-1/8", "0/1"]
    assert RootSystem.from_json(doc) == a3


def test_coweight_evaluation_matches_killing(a2, rng):
    """mu(h) equals <<mu, nu>> where H_nu = h, and coroot coordinates are consistent."""
    h = CoWeight(a2, rng.normal(size=2))
    nu = h.as_weight()
    for mu in [(F(1), F(0)), (F(2, 3), F(-1)), a2.rho]:
        expect = sum(float(mu[i]) * float(a2.gram[i][j]) * nu[j] for i in range(2) for j in range(2))
        assert np.isclose(h.evaluate(mu), expect)
    hb = CoWeight.coroot(a2, (1, 1))
    assert np.isclose(hb.evaluate((1, 1)), 2.0)
    assert np.allclose(CoWeight.from_diagonal(a2, hb.diagonal()).coeffs, hb.coeffs)
    assert np.allclose(hb.diagonal(), [1, 0, -1])


def test_weyl_ad_matches_matrix_conjugation(a3, rng):
    from bruhatcells.matrixlie import w_dot

    for idx in [(1,), (1, 2), (2, 3, 1), (1, 2, 1, 3, 2, 1)]:
        w = ReducedWord(a3, idx)
        h = CoWeight(a3, rng.normal(size=(5, 3)))
        wd = w_dot(w)
        mats = np.einsum("ij,mj,kj->mik", wd, h.diagonal(), wd.conj())
        assert np.allclose(np.diagonal(mats, axis1=1, axis2=2).real, weyl_ad(w, h).diagonal())
