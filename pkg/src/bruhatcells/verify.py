"""Property suites run by ``bruhatcells verify``; each returns a list of Check records."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import cells, kostant, matrixlie as ml, quad
from .rootsys import CoWeight, ReducedWord

SUITES = ("iwasawa", "equivariance", "identities", "kostant", "integrals")


@dataclass
class Check:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.deviation) and self.deviation < self.tolerance)

    def to_json(self) -> dict:
        d = asdict(self)
        d["deviation"] = float(self.deviation)
        d["passed"] = self.passed
        return d


def random_points(length: int, count: int, rng: np.random.Generator, radius: float = 5.0) -> np.ndarray:
    """Uniform samples from the polydisc |z_j| <= radius."""
    r = radius * np.sqrt(rng.random((count, length)))
    theta = rng.uniform(0, 2 * np.pi, (count, length))
    return r * np.exp(1j * theta)


def _rel_entry(a, b) -> float:
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b)), initial=0.0))


def suite_iwasawa(word: ReducedWord, rng, points: int, radius: float = 5.0) -> list:
    z = random_points(word.length, points, rng, radius)
    n = ml.coordinate_map(word, z)
    oracle = ml.coordinate_map_oracle(word, z)
    wd = ml.w_dot(word)
    g = np.linalg.inv(wd) @ n @ wd
    tri = ml.iwasawa(g)
    chol = ml.iwasawa_cholesky(g)
    a_num = ml.a_w_numeric(word, n).coeffs
    a_cl = cells.a_w_closed(word, z).coeffs
    zp = ml.bott_samelson_change(word, z)
    return [
        Check("iwasawa_reconstruction", _rel_entry(tri.k @ tri.a @ tri.n, g), 1e-12),
        Check("iwasawa_vs_cholesky", _rel_entry(tri.a @ tri.n, chol.a @ chol.n), 1e-10),
        Check("coordinate_map_vs_oracle", float(np.max(np.abs(n - oracle), initial=0.0)), 1e-10),
        Check("support_in_R_w", ml.support_deviation(word, n) / max(1.0, float(np.max(np.abs(n)))), 1e-10),
        Check("a_w_closed_vs_matrix", float(np.max(np.abs(a_num - a_cl) / np.maximum(1.0, np.abs(a_cl)), initial=0.0)), 1e-10),
        Check("bott_samelson_composition", float(np.max(np.abs(ml.bott_samelson_map(word, zp) - n), initial=0.0)), 1e-10),
        Check("cell_coordinates_roundtrip", _rel_entry(ml.cell_coordinates(word, n), z), 1e-10),
    ]


def suite_equivariance(word: ReducedWord, rng, points: int, radius: float = 5.0) -> list:
    sys = word.system
    z = random_points(word.length, points, rng, radius)
    t = ml.random_torus(sys, rng, points)
    lhs = ml.coordinate_map(word, ml.t_conjugate(word, t, z))
    n = ml.coordinate_map(word, z)
    rhs = t[:, :, None] * n / t[:, None, :]
    out = [Check("torus_equivariance", float(np.max(np.abs(lhs - rhs), initial=0.0)), 1e-10)]
    if word.length:
        k = min(points, 10)
        zs = random_points(word.length, k, rng, 2.0)
        n0 = ml.coordinate_map(word, random_points(word.length, k, rng, 2.0))
        left = max(cells.left_invariance_defect(word, n0[i], zs[i]) for i in range(k))
        out.append(Check("haar_left_invariance", left, 1e-6))
        moment = 0.0
        for i in range(k):
            h = CoWeight(sys, rng.normal(size=sys.rank))
            moment = max(moment, cells.torus_action_defect(word, zs[i], h))
        out.append(Check("moment_map_generates_torus_action", moment, 1e-6))
    return out


def suite_identities(word: ReducedWord, rng, points: int, radius: float = 5.0) -> list:
    z = random_points(word.length, points, rng, radius)
    out = [Check(k, v, 1e-12) for k, v in cells.identity_suite(word, z).items()]
    out += [Check(k + "[matrix a_w]", v, 1e-10) for k, v in cells.identity_suite(word, z, "matrix").items()]
    sys = word.system
    zz = random_points(1, points, rng, 10.0)[:, 0]
    worst = 0.0
    for a in word.alphas:
        prod = cells.su2_bracket(sys, a, zz) * cells.omega_coefficient(sys, a, zz)
        worst = max(worst, float(np.max(np.abs(prod - 1))))
    out.append(Check("su2_bracket_reciprocity", worst, 1e-14))
    return out


def suite_kostant(word: ReducedWord, rng=None, points: int = 0, radius: float = 0.0) -> list:
    sys = word.system
    h = kostant.h_seed(word)
    s, steps = kostant.neumann_series(h)
    l = word.length
    bideg = 0.0 if s.bidegrees() == {(l, l)} else 1.0
    zero = (0,) * sys.rank
    weight = 0.0 if s.weights() <= {tuple(zero)} else 1.0
    target = complex(np.prod([1j / float(sys.norm2(a)) for a in word.alphas]))
    pairing = kostant.pair_with_origin_multivector(word, s)
    return [
        Check("series_terminates", 0.0 if steps <= 2 * len(sys.positive_roots) + 1 else float(steps), 0.5),
        Check("bidegree_l_l", bideg, 0.5),
        Check("weight_zero", weight, 0.5),
        Check("origin_pairing", abs(pairing - target) / abs(target), 1e-10),
        Check("E_matches_bracket_oracle", (kostant.op_E(h) - kostant.brute_force_E(h)).max_coeff(), 1e-12),
    ]


def suite_integrals(word: ReducedWord, rng, points: int = 0, radius: float = 0.0, mc_samples: int = 200_000) -> list:
    sys = word.system
    if word.length == 0:
        return [Check("empty_cell_integral", abs(quad.integrate(cells.haar_density(word)).value - 1), 1e-15)]
    norm = cells.character_density(word, tuple(-4 * r for r in sys.rho)) * cells.haar_density(word)
    closed = quad.integrate(norm)
    quadr = quad.integrate(norm, "quadrature")
    seed = int(rng.integers(2**31)) if rng is not None else 0
    mc = quad.monte_carlo(norm, seed=seed, samples=mc_samples)
    sch_c = quad.schubert_integral(word)
    sch_q = quad.schubert_integral(word, "quadrature")
    c2 = quad.c_function(word, tuple(2 * r for r in sys.rho))
    # sigma is exactly 0 when the weights are constant (l = 1), hence the floor
    sigmas = abs(complex(mc.value) - 1) / (mc.error_estimate + 1e-12)
    return [
        Check("haar_normalization_closed", abs(complex(closed.value) - 1), 1e-14),
        Check("haar_normalization_quadrature", abs(complex(quadr.value) - 1), 1e-8),
        Check("haar_normalization_monte_carlo_sigmas", sigmas, 3.0),
        Check("integral_phase", abs(closed.phase - 1), 1e-14),
        Check("schubert_quadrature", abs(sch_q.value - sch_c.value) / abs(sch_c.value), 1e-8),
        Check("schubert_vs_c_function", abs(quad.schubert_via_c_function(word) - sch_c.value) / abs(sch_c.value), 1e-12),
        Check("c_function_at_2rho", abs(complex(c2.value) - 1), 1e-15),
    ]


def run_suite(name: str, word: ReducedWord, seed: int = 0, points: int = 50) -> list:
    rng = np.random.default_rng(seed)
    fn = {
        "iwasawa": suite_iwasawa,
        "equivariance": suite_equivariance,
        "identities": suite_identities,
        "kostant": suite_kostant,
        "integrals": suite_integrals,
    }[name]
    return fn(word, rng, points)
