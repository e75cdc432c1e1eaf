"""Kostant's harmonic forms in the exterior algebra of n_- + n.

An ``ExtElement`` is a sparse sum of monomials E_{-a_1} ^ ... ^ E_{-a_p} (x)
E_{b_1} ^ ... ^ E_{b_q}, keyed by a pair of bitmasks over the positive roots in
height-then-lex order. Within a monomial, factors appear in increasing bit order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import SeriesError
from .rootsys import ReducedWord, RootSystem, _add, _sub

PRUNE = 1e-15


def root_order(sys: RootSystem) -> tuple:
    """Positive roots sorted by height, ties broken lexicographically (alpha_1 first)."""
    return tuple(sorted(sys.positive_roots, key=lambda r: (sum(r), tuple(-c for c in r))))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


@dataclass
class ExtElement:
    system: RootSystem = field(repr=False)
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: complex(v) for k, v in self.terms.items() if abs(v) >= PRUNE}

    @property
    def roots(self) -> tuple:
        return root_order(self.system)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ExtElement(self.system, out)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + other.scale(-1)

    def scale(self, c: complex) -> "ExtElement":
        return ExtElement(self.system, {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def max_coeff(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def bidegrees(self) -> set:
        return {(_popcount(n), _popcount(p)) for n, p in self.terms}

    def _mask_sum(self, mask: int) -> tuple:
        roots = self.roots
        total = (Fraction(0),) * self.system.rank
        for k in _bits(mask):
            total = _add(total, roots[k])
        return total

    def weight_of(self, key) -> tuple:
        neg, pos = key
        return _sub(self._mask_sum(pos), self._mask_sum(neg))

    def weights(self) -> set:
        return {self.weight_of(k) for k in self.terms}

    def to_json(self) -> list:
        out = []
        for (neg, pos), c in sorted(self.terms.items()):
            out.append({"neg": list(_bits(neg)), "pos": list(_bits(pos)), "coeff": [c.real, c.imag]})
        return out

    @classmethod
    def from_json(cls, sys: RootSystem, doc: list) -> "ExtElement":
        terms = {}
        for t in doc:
            key = (sum(1 << k for k in t["neg"]), sum(1 << k for k in t["pos"]))
            terms[key] = terms.get(key, 0) + complex(*t["coeff"])
        return cls(sys, terms)


def root_vector(sys: RootSystem, root) -> np.ndarray:
    """E_root = E_ij / sqrt(2n) in sl(n); <<E_a, E_-a>> = 1 for the Killing form 2n tr."""
    m = np.zeros((sys.n, sys.n), dtype=complex)
    m[sys.matrix_position(root)] = 1 / math.sqrt(2 * sys.n)
    return m


def killing(sys: RootSystem, x: np.ndarray, y: np.ndarray) -> complex:
    return 2 * sys.n * np.trace(x @ y)


@dataclass(frozen=True)
class StructureConstants:
    """[E_x, E_y] = N(x, y) E_{x+y} for roots x, y of equal sign, read off matrices."""

    system: RootSystem
    table: dict

    def __call__(self, x, y) -> float:
        return self.table.get((tuple(x), tuple(y)), 0.0)


@lru_cache(maxsize=None)
def structure_constants(sys: RootSystem) -> StructureConstants:
    roots = list(sys.positive_roots) + [tuple(-c for c in r) for r in sys.positive_roots]
    table = {}
    for x in roots:
        for y in roots:
            s = _add(x, y)
            if not sys.is_root(s):
                continue
            ex, ey = root_vector(sys, x), root_vector(sys, y)
            br = ex @ ey - ey @ ex
            # coefficient of E_s: pair with E_{-s}
            coeff = killing(sys, br, root_vector(sys, tuple(-c for c in s)))
            table[(tuple(x), tuple(y))] = float(coeff.real)
    return StructureConstants(sys, table)


def _move_bit(mask: int, old: int, new: int):
    """Replace bit ``old`` by bit ``new``; returns (mask, sign) or None if ``new`` is taken."""
    rest = mask & ~(1 << old)
    if rest & (1 << new):
        return None
    lo, hi = min(old, new), max(old, new)
    between = rest & (((1 << hi) - 1) & ~((1 << (lo + 1)) - 1))
    return rest | (1 << new), (-1) ** _popcount(between)


def _ad_on_mask(sys: RootSystem, x_root, mask: int, sign_of_factor: int) -> list:
    """ad_{E_x} as a derivation on a wedge monomial of E_{sign * root} factors."""
    roots = root_order(sys)
    index = {r: k for k, r in enumerate(roots)}
    sc = structure_constants(sys)
    out = []
    for k in _bits(mask):
        y = roots[k] if sign_of_factor > 0 else tuple(-c for c in roots[k])
        s = _add(x_root, y)
        n = sc(x_root, y)
        if n == 0:
            continue
        target = s if sign_of_factor > 0 else tuple(-c for c in s)
        moved = _move_bit(mask, k, index[tuple(target)])
        if moved is not None:
            out.append((moved[0], moved[1] * n))
    return out


def op_E(x: ExtElement) -> ExtElement:
    """E = 2 sum_{a>0} ad_{E_-a} (x) ad_{E_a}, each ad a derivation on its own factor."""
    sys = x.system
    out = {}
    for (neg, pos), c in x.terms.items():
        for a in sys.positive_roots:
            minus_a = tuple(-v for v in a)
            left = _ad_on_mask(sys, minus_a, neg, -1)
            if not left:
                continue
            right = _ad_on_mask(sys, a, pos, +1)
            for nm, ns in left:
                for pm, ps in right:
                    key = (nm, pm)
                    out[key] = out.get(key, 0) + 2 * c * ns * ps
    return ExtElement(sys, out)


def l0_denominator(sys: RootSystem, negmask: int) -> Fraction:
    """||rho||^2 - ||rho - S||^2 with S the sum of the n_- factor roots."""
    roots = root_order(sys)
    s = (Fraction(0),) * sys.rank
    for k in _bits(negmask):
        s = _add(s, roots[k])
    return sys.norm2(sys.rho) - sys.norm2(_sub(sys.rho, s))


def op_L0(x: ExtElement) -> ExtElement:
    out = {}
    for (neg, pos), c in x.terms.items():
        d = l0_denominator(x.system, neg)
        if d != 0:
            out[(neg, pos)] = c / float(d)
    return ExtElement(x.system, out)


def op_R(x: ExtElement) -> ExtElement:
    return op_L0(op_E(x)).scale(-1)


def _mask_of(sys: RootSystem, roots) -> int:
    index = {r: k for k, r in enumerate(root_order(sys))}
    return sum(1 << index[tuple(r)] for r in roots)


def h_seed(word: ReducedWord) -> ExtElement:
    """(i/2)^l E_-b1 ^ ... ^ E_-bl (x) E_b1 ^ ... ^ E_bl.

    Both factors are reordered by the same permutation, so the signs cancel.
    """
    sys = word.system
    m = _mask_of(sys, word.betas)
    return ExtElement(sys, {(m, m): (0.5j) ** word.length})


def neumann_series(h: ExtElement, tol: float = 1e-14, max_iter: int | None = None):
    """sum_k R^k h; returns (sum, number of nonzero terms)."""
    sys = h.system
    if max_iter is None:
        max_iter = 2 * 4 ** len(sys.positive_roots)
    total, term = h, h
    for k in range(1, max_iter + 1):
        term = op_R(term)
        if term.max_coeff() < tol:
            return total, k
        total = total + term
    raise SeriesError(f"R^k h did not vanish after {max_iter} steps")


def s_form(word: ReducedWord) -> ExtElement:
    """s^w = (1 - R)^{-1} h^{w^{-1}}."""
    return neumann_series(h_seed(word))[0]


def nilpotency_index(x: ExtElement, max_iter: int = 64) -> int:
    """Smallest k with R^k x = 0."""
    for k in range(max_iter + 1):
        if x.max_coeff() < PRUNE:
            return k
        x = op_R(x)
    raise SeriesError("R did not vanish")


def origin_vectors(word: ReducedWord) -> list:
    """Real tangent vectors at the base point for v_j and i v_j, v_j = Ad_{w^-1} E_{alpha_j}.

    A vector X in n_- is represented by its compact form X - X^H in k, expanded
    over the root vectors.
    """
    from .matrixlie import w_dot

    sys = word.system
    wd = w_dot(word)
    out = []
    for alpha in word.alphas:
        v = np.conj(wd.T) @ root_vector(sys, alpha) @ wd
        for scale in (1, 1j):
            x = scale * v
            out.append(x - np.conj(x.T))
    return out


def pair_with_origin_multivector(word: ReducedWord, s: ExtElement) -> complex:
    """Pair s with the pushed-forward coordinate multivector at z = 0.

    The form factors pair with vectors through the Killing form; a monomial in
    n_- (x) n of bidegree (p, p) is embedded in the full exterior algebra with
    the sign (-1)^{p(p-1)/2} that interleaves the two factors.
    """
    sys = word.system
    l = word.length
    roots = root_order(sys)
    vecs = origin_vectors(word)
    prefactor = math.prod(float(1 / sys.norm2(a)) for a in word.alphas) * (1j ** l)
    total = 0j
    for (neg, pos), c in s.terms.items():
        if _popcount(neg) != l or _popcount(pos) != l:
            continue
        forms = [root_vector(sys, tuple(-v for v in roots[k])) for k in _bits(neg)]
        forms += [root_vector(sys, roots[k]) for k in _bits(pos)]
        mat = np.array([[killing(sys, f, v) for v in vecs] for f in forms])
        total += c * (-1) ** (l * (l - 1) // 2) * (np.linalg.det(mat) if l else 1.0)
    return prefactor * total


def brute_force_E(x: ExtElement) -> ExtElement:
    """E computed from matrix commutators and explicit reordering, for testing.

    Each monomial is expanded as a list of matrices; derivation terms are re-expanded
    over root vectors by the Killing form and sorted with a permutation sign.
    """
    sys = x.system
    roots = root_order(sys)
    neg_basis = [root_vector(sys, tuple(-v for v in r)) for r in roots]
    pos_basis = [root_vector(sys, r) for r in roots]

    def expand(mat, basis, dual):
        return {k: killing(sys, mat, dual[k]) for k in range(len(basis)) if abs(killing(sys, mat, dual[k])) > 1e-13}

    def derive(X, idx, basis, dual):
        out = {}
        for pos_k in range(len(idx)):
            m = X @ basis[idx[pos_k]] - basis[idx[pos_k]] @ X
            for k, c in expand(m, basis, dual).items():
                new = list(idx)
                new[pos_k] = k
                if len(set(new)) < len(new):
                    continue
                perm = sorted(range(len(new)), key=lambda t: new[t])
                sign = _perm_sign(perm)
                key = sum(1 << t for t in new)
                out[key] = out.get(key, 0) + sign * c
        return out

    out = {}
    for (neg, pos), c in x.terms.items():
        ni, pi = list(_bits(neg)), list(_bits(pos))
        for a in sys.positive_roots:
            left = derive(root_vector(sys, tuple(-v for v in a)), ni, neg_basis, pos_basis)
            right = derive(root_vector(sys, a), pi, pos_basis, neg_basis)
            for nm, nc in left.items():
                for pm, pc in right.items():
                    out[(nm, pm)] = out.get((nm, pm), 0) + 2 * c * nc * pc
    return ExtElement(sys, out)


def _perm_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def all_monomials(sys: RootSystem):
    """Every basis monomial of the exterior algebra, as single-term elements."""
    size = len(sys.positive_roots)
    for neg in range(1 << size):
        for pos in range(1 << size):
            yield ExtElement(sys, {(neg, pos): 1.0})
