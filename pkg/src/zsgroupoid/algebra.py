"""The convolution *-algebra of a finite groupoid.

For a finite groupoid every complex function is compactly supported, so the
algebra is ``C^G`` with

    (f * k)(x) = sum over y z = x of f(y) k(z)
    f*(x)      = conj(f(x^-1))

Norms: the I-norm, the supremum norm, and the reduced norm (largest singular
value of the left regular representation on each source fibre).  A finite
groupoid has finite isotropy, so the full norm coincides with the reduced
norm and is computed as such (``full_norm``).
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import PreconditionError
from .groupoid import FiniteGroupoid, is_slice
from .report import label

RTOL = 1e-9
ATOL = 1e-12


def close(a: float, b: float, rtol: float = RTOL, atol: float = ATOL) -> bool:
    return abs(a - b) <= max(atol, rtol * max(abs(a), abs(b)))


@dataclass(frozen=True, eq=False)
class GroupoidFunction:
    """A complex function on a finite groupoid; absent elements are zero.

    Exact zero coefficients are dropped so ``support`` is the true support.
    """

    base: FiniteGroupoid
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        for x in self.coeffs:
            if x not in self.base:
                raise PreconditionError(f"{label(x)!r} is not an element of the base groupoid")
        pruned = {
            x: complex(self.coeffs[x])
            for x in self.base
            if x in self.coeffs and complex(self.coeffs[x]) != 0
        }
        object.__setattr__(self, "coeffs", pruned)

    def __call__(self, x) -> complex:
        return self.coeffs.get(x, 0j)

    @property
    def support(self) -> tuple:
        return tuple(self.coeffs)

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(len(self.base), dtype=complex)
        for x, v in self.coeffs.items():
            vec[self.base.index(x)] = v
        return vec

    @classmethod
    def from_vector(cls, base: FiniteGroupoid, vec) -> GroupoidFunction:
        return cls(base, {x: complex(v) for x, v in zip(base.elements, vec) if v != 0})

    def _same_base(self, other: GroupoidFunction) -> None:
        if other.base is not self.base:
            raise PreconditionError("functions live on different groupoids")

    def __add__(self, other: GroupoidFunction) -> GroupoidFunction:
        self._same_base(other)
        return GroupoidFunction.from_vector(self.base, self.to_vector() + other.to_vector())

    def __sub__(self, other: GroupoidFunction) -> GroupoidFunction:
        self._same_base(other)
        return GroupoidFunction.from_vector(self.base, self.to_vector() - other.to_vector())

    def __neg__(self) -> GroupoidFunction:
        return GroupoidFunction(self.base, {x: -v for x, v in self.coeffs.items()})

    def __mul__(self, scalar) -> GroupoidFunction:
        return GroupoidFunction(self.base, {x: scalar * v for x, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: GroupoidFunction) -> GroupoidFunction:
        return convolve(self, other)

    def equals(self, other: GroupoidFunction, rtol: float = RTOL, atol: float = ATOL) -> bool:
        """Coefficientwise equality within tolerance."""
        self._same_base(other)
        a, b = self.to_vector(), other.to_vector()
        scale = max(np.max(np.abs(a), initial=0.0), np.max(np.abs(b), initial=0.0))
        return bool(np.max(np.abs(a - b), initial=0.0) <= max(atol, rtol * scale))

    def __repr__(self) -> str:
        terms = " + ".join(f"{v:g}*d[{label(x)}]" for x, v in self.coeffs.items()) or "0"
        return f"<GroupoidFunction {terms}>"


def delta(base: FiniteGroupoid, x, value: complex = 1.0) -> GroupoidFunction:
    """The point mass ``value * delta_x``."""
    return GroupoidFunction(base, {x: value})


def unit_function(base: FiniteGroupoid) -> GroupoidFunction:
    """``sum of delta_u`` over the units: the identity of the algebra."""
    return GroupoidFunction(base, {u: 1.0 for u in base.units})


@lru_cache(maxsize=64)
def _pair_indices(base: FiniteGroupoid):
    pairs = base.composable_pairs
    left = np.array([base.index(x) for x, _ in pairs], dtype=np.intp)
    right = np.array([base.index(y) for _, y in pairs], dtype=np.intp)
    prod = np.array([base.index(base.compose(x, y)) for x, y in pairs], dtype=np.intp)
    inv = np.array([base.index(base.inverse(x)) for x in base], dtype=np.intp)
    return left, right, prod, inv


def convolve_vectors(base: FiniteGroupoid, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Convolution on coefficient vectors; summation follows the composable-pair order."""
    left, right, prod, _ = _pair_indices(base)
    out = np.zeros(len(base), dtype=complex)
    np.add.at(out, prod, u[left] * v[right])
    return out


def involve_vector(base: FiniteGroupoid, u: np.ndarray) -> np.ndarray:
    _, _, _, inv = _pair_indices(base)
    return np.conj(u[inv])


def convolve(f: GroupoidFunction, k: GroupoidFunction) -> GroupoidFunction:
    f._same_base(k)
    return GroupoidFunction.from_vector(f.base, convolve_vectors(f.base, f.to_vector(), k.to_vector()))


def involve(f: GroupoidFunction) -> GroupoidFunction:
    g = f.base
    return GroupoidFunction(g, {g.inverse(x): v.conjugate() for x, v in f.coeffs.items()})


def i_norm(f: GroupoidFunction) -> float:
    """``sup_u max(sum_{r(x)=u} |f(x)|, sum_{s(x)=u} |f(x)|)``."""
    g = f.base
    best = 0.0
    for u in g.units:
        incoming = math.fsum(abs(f(x)) for x in g.range_fibre(u))
        outgoing = math.fsum(abs(f(x)) for x in g.source_fibre(u))
        best = max(best, incoming, outgoing)
    return best


def sup_norm(f: GroupoidFunction) -> float:
    return max((abs(v) for v in f.coeffs.values()), default=0.0)


@dataclass(frozen=True, eq=False)
class RegularRep:
    """The left regular representation at ``unit`` on functions over ``s^-1(unit)``."""

    unit: object
    basis: tuple
    matrix: np.ndarray


def regular_representation(f: GroupoidFunction, u) -> RegularRep:
    """Matrix with entry ``f(h g^-1)`` at row ``h``, column ``g`` for ``g, h`` in ``s^-1(u)``.

    This is ``delta_g -> sum_k f(k) delta_{k g}``; convolution becomes matrix
    product and involution becomes conjugate transpose.
    """
    g = f.base
    if not g.is_unit(u):
        raise PreconditionError(f"{label(u)!r} is not a unit")
    basis = g.source_fibre(u)
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for i, h in enumerate(basis):
        for j, x in enumerate(basis):
            mat[i, j] = f(g.compose(h, g.inverse(x)))
    return RegularRep(u, basis, mat)


def reduced_norm(f: GroupoidFunction) -> float:
    """Largest operator norm of the regular representations over all units."""
    best = 0.0
    for u in f.base.units:
        mat = regular_representation(f, u).matrix
        if mat.size:
            best = max(best, float(np.linalg.norm(mat, 2)))
    return best


full_norm = reduced_norm


@dataclass
class SliceNormReport:
    is_slice_supported: bool
    sup: float
    I: float  # noqa: E741
    reduced: float
    equal_within_tol: bool

    @property
    def ok(self) -> bool:
        """Equality is only claimed for slice-supported functions."""
        return self.equal_within_tol or not self.is_slice_supported

    def to_dict(self) -> dict:
        return {
            "is_slice_supported": self.is_slice_supported,
            "sup": self.sup,
            "I": self.I,
            "reduced": self.reduced,
            "equal_within_tol": self.equal_within_tol,
        }


def check_slice_norms(f: GroupoidFunction, rtol: float = RTOL, atol: float = ATOL) -> SliceNormReport:
    sup, inorm, red = sup_norm(f), i_norm(f), reduced_norm(f)
    equal = close(sup, inorm, rtol, atol) and close(inorm, red, rtol, atol) and close(sup, red, rtol, atol)
    return SliceNormReport(is_slice(f.base, f.support), sup, inorm, red, equal)


def random_function(base: FiniteGroupoid, rng: np.random.Generator, support=None) -> GroupoidFunction:
    """Complex Gaussian coefficients on ``support`` (default: everything)."""
    support = list(base.elements if support is None else support)
    vals = rng.standard_normal(len(support)) + 1j * rng.standard_normal(len(support))
    return GroupoidFunction(base, dict(zip(support, vals)))
