"""Type-A root systems under the Killing normalization, Weyl words and root sequences.

All root and weight arithmetic is exact (``fractions.Fraction``). Vectors are
tuples of coordinates in the simple-root basis. Simple roots are numbered from 1,
matching the usual sigma_1, sigma_2, ... notation for reduced words.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidRankError, NotReducedError

Vector = tuple  # tuple of Fraction (or float for CoWeight conversions)


def _vec(xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _scale(c, x):
    return tuple(c * a for a in x)


def _neg(x):
    return tuple(-a for a in x)


@dataclass(frozen=True)
class RootSystem:
    """A_{n-1} realized in sl(n) with Killing form 2n*tr(XY)."""

    rank: int
    cartan: tuple
    gram: tuple
    positive_roots: tuple
    rho: Vector

    @property
    def n(self) -> int:
        """Matrix size of the defining sl(n) realization."""
        return self.rank + 1

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array([[float(g) for g in row] for row in self.gram])

    @cached_property
    def _root_index(self) -> dict:
        return {r: k for k, r in enumerate(self.positive_roots)}

    def simple_root(self, i: int) -> Vector:
        self._check_index(i)
        return tuple(Fraction(int(k == i - 1)) for k in range(self.rank))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple root index {i} out of range 1..{self.rank}")

    def pairing(self, x, y):
        """Killing pairing <<x, y>> of two weights given in the simple-root basis."""
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError(f"dimension mismatch: expected length {self.rank}")
        return sum(
            x[i] * self.gram[i][j] * y[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if x[i] and y[j]
        ) + Fraction(0)

    def norm2(self, x):
        return self.pairing(x, x)

    def reflect(self, r, x):
        """sigma_r(x) = x - (2<<x, r>>/<<r, r>>) r."""
        rr = self.pairing(r, r)
        if rr == 0:
            raise ValueError("cannot reflect in the zero vector")
        c = 2 * self.pairing(x, r) / rr
        return _sub(x, _scale(c, r))

    def simple_reflection(self, i: int, x):
        return self.reflect(self.simple_root(i), x)

    def is_positive_root(self, x) -> bool:
        return tuple(x) in self._root_index

    def is_root(self, x) -> bool:
        return self.is_positive_root(x) or self.is_positive_root(_neg(x))

    def root_index(self, root) -> int:
        """0-based position of a positive root in ``positive_roots``."""
        return self._root_index[tuple(root)]

    def height(self, root) -> int:
        return int(sum(root))

    def matrix_position(self, root) -> tuple:
        """0-based (row, col) of the matrix unit carrying ``root`` in sl(n)."""
        nz = [k for k, c in enumerate(root) if c != 0]
        if not nz:
            raise ValueError("zero vector is not a root")
        i, j = nz[0], nz[-1] + 1
        return (i, j) if root[nz[0]] > 0 else (j, i)

    def coroot(self, root):
        """Coordinates of the coroot 2H_beta/<<beta,beta>> in the basis of simple coroots."""
        bb = self.norm2(root)
        return tuple(
            root[k] * self.gram[k][k] / bb for k in range(self.rank)
        )

    def weight_eval(self, mu, h):
        """mu(h) for a weight ``mu`` and coroot-basis coordinates ``h`` (last axis)."""
        vals = np.array(
            [2 * self.pairing(mu, self.simple_root(k + 1)) / self.gram[k][k] for k in range(self.rank)],
            dtype=float,
        )
        return np.asarray(h) @ vals

    def word(self, indices: Sequence[int]) -> "ReducedWord":
        return ReducedWord(self, tuple(int(i) for i in indices))

    def to_json(self) -> dict:
        return {
            "type": "A",
            "rank": self.rank,
            "gram": [[_frac_str(g) for g in row] for row in self.gram],
            "positive_roots": [[int(c) for c in r] for r in self.positive_roots],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RootSystem":
        if doc.get("type") != "A":
            raise ValueError(f"unsupported root system type {doc.get('type')!r}")
        sys = build_type_a(int(doc["rank"]) + 1)
        gram = tuple(tuple(Fraction(g) for g in row) for row in doc["gram"])
        if gram != sys.gram:
            raise ValueError("gram matrix does not match the Killing normalization")
        return sys


def _frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def build_type_a(n: int) -> RootSystem:
    """Root system A_{n-1} of sl(n) with Gram matrix from the Killing form 2n*tr."""
    if n < 2:
        raise InvalidRankError(f"sl(n) needs n >= 2, got {n}")
    r = n - 1
    cartan = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r))
        for i in range(r)
    )
    # <<e_i - e_j, e_k - e_l>> = (e_i - e_j).(e_k - e_l) / (2n)
    gram = tuple(tuple(Fraction(c, 2 * n) for c in row) for row in cartan)
    roots = []
    for i in range(r):
        for j in range(i, r):
            roots.append(tuple(Fraction(int(i <= k <= j)) for k in range(r)))
    roots.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
    rho = tuple(sum(col, Fraction(0)) / 2 for col in zip(*roots))
    return RootSystem(r, cartan, gram, tuple(roots), rho)


def pairing(sys: RootSystem, x, y):
    return sys.pairing(x, y)


def reflect(sys: RootSystem, r, x):
    return sys.reflect(r, x)


def weyl_act(sys: RootSystem, indices: Sequence[int], x):
    """w(x) for w = sigma_{i_1} ... sigma_{i_l}."""
    for i in reversed(indices):
        x = sys.simple_reflection(i, x)
    return x


def weyl_act_inverse(sys: RootSystem, indices: Sequence[int], x):
    """w^{-1}(x) for w = sigma_{i_1} ... sigma_{i_l}."""
    for i in indices:
        x = sys.simple_reflection(i, x)
    return x


def _alphas(sys: RootSystem, indices: Sequence[int]):
    out = []
    for j, i in enumerate(indices, start=1):
        a = weyl_act(sys, indices[: j - 1], sys.simple_root(i))
        if not sys.is_positive_root(a) or a in out:
            raise NotReducedError(indices, j)
        out.append(a)
    return tuple(out)


def is_reduced(sys: RootSystem, indices: Sequence[int]) -> bool:
    for i in indices:
        sys._check_index(i)
    try:
        _alphas(sys, tuple(indices))
    except NotReducedError:
        return False
    return True


@dataclass(frozen=True)
class ReducedWord:
    """A reduced decomposition w = sigma_{gamma_1} ... sigma_{gamma_l}."""

    system: RootSystem = field(repr=False)
    indices: tuple

    def __post_init__(self):
        for i in self.indices:
            self.system._check_index(i)
        # validates reducedness eagerly
        self.alphas

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def length(self) -> int:
        return len(self.indices)

    @cached_property
    def alphas(self) -> tuple:
        return _alphas(self.system, self.indices)

    @cached_property
    def betas(self) -> tuple:
        return tuple(
            _neg(weyl_act_inverse(self.system, self.indices, a)) for a in self.alphas
        )

    def prefix(self, k: int) -> "ReducedWord":
        return ReducedWord(self.system, self.indices[:k])

    def inverse(self) -> "ReducedWord":
        return ReducedWord(self.system, self.indices[::-1])

    def act(self, x):
        return weyl_act(self.system, self.indices, x)

    def act_inverse(self, x):
        return weyl_act_inverse(self.system, self.indices, x)

    def same_element(self, other: "ReducedWord") -> bool:
        """Equality of Weyl group elements, decided by the action on simple roots."""
        sys = self.system
        return all(
            self.act(sys.simple_root(i)) == other.act(sys.simple_root(i))
            for i in range(1, sys.rank + 1)
        )


def alpha_sequence(word: ReducedWord) -> tuple:
    return word.alphas


def beta_sequence(word: ReducedWord) -> tuple:
    return word.betas


def inversion_set(sys: RootSystem, indices: Sequence[int]) -> set:
    """{alpha > 0 : w^{-1} alpha < 0} by enumeration of all positive roots."""
    return {
        a
        for a in sys.positive_roots
        if sys.is_positive_root(_neg(weyl_act_inverse(sys, indices, a)))
    }


def reduced_words(sys: RootSystem, max_length: int | None = None) -> Iterator[tuple]:
    """All reduced words, shortest first, each length in lexicographic order."""
    level = [()]
    length = 0
    while level:
        yield from level
        if max_length is not None and length >= max_length:
            return
        nxt = []
        for w in level:
            for i in range(1, sys.rank + 1):
                # w sigma_i is reduced iff w(gamma_i) > 0
                if sys.is_positive_root(weyl_act(sys, w, sys.simple_root(i))):
                    nxt.append(w + (i,))
        level = nxt
        length += 1


@dataclass(frozen=True)
class CoWeight:
    """Element of the real Cartan subalgebra in the basis of simple coroots."""

    system: RootSystem = field(repr=False, compare=False)
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @classmethod
    def zero(cls, sys: RootSystem, batch: tuple = ()) -> "CoWeight":
        return cls(sys, np.zeros(tuple(batch) + (sys.rank,)))

    @classmethod
    def coroot(cls, sys: RootSystem, root, scale: float = 1.0) -> "CoWeight":
        return cls(sys, scale * np.array([float(c) for c in sys.coroot(root)]))

    def __add__(self, other: "CoWeight") -> "CoWeight":
        return CoWeight(self.system, self.coeffs + other.coeffs)

    def __sub__(self, other: "CoWeight") -> "CoWeight":
        return CoWeight(self.system, self.coeffs - other.coeffs)

    def __neg__(self) -> "CoWeight":
        return CoWeight(self.system, -self.coeffs)

    def __mul__(self, c: float) -> "CoWeight":
        return CoWeight(self.system, c * self.coeffs)

    __rmul__ = __mul__

    def evaluate(self, mu) -> float:
        """mu(h) for a weight mu; equals <<mu, H>> under the Killing identification."""
        return self.system.weight_eval(mu, self.coeffs)

    def as_weight(self) -> tuple:
        """The weight nu with H_nu equal to this element (float coordinates)."""
        g = self.system.gram
        return tuple(float(2 / g[k][k]) * self.coeffs[..., k] for k in range(self.system.rank))

    @classmethod
    def from_weight(cls, sys: RootSystem, nu) -> "CoWeight":
        cols = [np.asarray(nu[k], dtype=float) * float(sys.gram[k][k]) / 2 for k in range(sys.rank)]
        return cls(sys, np.stack(cols, axis=-1))

    def diagonal(self) -> np.ndarray:
        """Diagonal of the sl(n) matrix sum_k h_k (E_kk - E_{k+1,k+1})."""
        h = self.coeffs
        d = np.zeros(h.shape[:-1] + (self.system.n,))
        d[..., :-1] += h
        d[..., 1:] -= h
        return d

    @classmethod
    def from_diagonal(cls, sys: RootSystem, d) -> "CoWeight":
        d = np.asarray(d, dtype=float)
        return cls(sys, np.cumsum(d, axis=-1)[..., :-1])


def weyl_matrix(word: ReducedWord) -> np.ndarray:
    """Matrix of w on weights in the simple-root basis (columns are w(gamma_k))."""
    sys = word.system
    cols = [word.act(sys.simple_root(k + 1)) for k in range(sys.rank)]
    return np.array([[float(c[i]) for c in cols] for i in range(sys.rank)])


def weyl_ad(word: ReducedWord, h: CoWeight) -> CoWeight:
    """Ad_w on the Cartan subalgebra, computed through the root-level action."""
    nu = np.stack(h.as_weight(), axis=-1)
    return CoWeight.from_weight(word.system, np.moveaxis(nu @ weyl_matrix(word).T, -1, 0))
