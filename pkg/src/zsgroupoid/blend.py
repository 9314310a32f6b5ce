"""The two factor algebras inside the algebra of a Zappa-Szép product.

``i`` and ``j`` push functions on the factors into the product:

    i(f)(g, h) = f(g)  if h = t(g), else 0
    j(k)(g, h) = k(h)  if g = l(h), else 0

In finite dimensions the blend property (range of ``a (x) b -> i(a) j(b)``
contained and dense) is the statement that the products ``i(delta_g) *
j(delta_h)`` span the whole algebra, which is decided by a numerical rank.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    ATOL,
    RTOL,
    GroupoidFunction,
    convolve,
    convolve_vectors,
    involve,
    involve_vector,
    random_function,
)
from .errors import PreconditionError
from .zs import ZsGroupoid


def embed_i(zs: ZsGroupoid, f: GroupoidFunction) -> GroupoidFunction:
    if f.base is not zs.pair.g:
        raise PreconditionError("embed_i expects a function on the first factor")
    return GroupoidFunction(zs.product, {zs.embed_g(x): v for x, v in f.coeffs.items()})


def embed_j(zs: ZsGroupoid, f: GroupoidFunction) -> GroupoidFunction:
    if f.base is not zs.pair.h:
        raise PreconditionError("embed_j expects a function on the second factor")
    return GroupoidFunction(zs.product, {zs.embed_h(y): v for y, v in f.coeffs.items()})


def numerical_rank(mat: np.ndarray, tol: float | None = None) -> int:
    """Count singular values above ``max(shape) * eps * s_max`` (or ``tol * s_max``)."""
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv[0] == 0:
        return 0
    rel = tol if tol is not None else max(mat.shape) * np.finfo(float).eps
    return int(np.sum(sv > rel * sv[0]))


def _row_basis(mat: np.ndarray, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases (as rows) of the row space and of its orthogonal complement."""
    n = mat.shape[1]
    if mat.size == 0:
        return np.zeros((0, n), dtype=complex), np.eye(n, dtype=complex)
    _, sv, vh = np.linalg.svd(mat)
    rel = tol if tol is not None else max(mat.shape) * np.finfo(float).eps
    rank = int(np.sum(sv > rel * sv[0])) if sv[0] > 0 else 0
    return vh[:rank], vh[rank:]


@dataclass
class HomomorphismReport:
    i_hom_ok: bool
    j_hom_ok: bool
    point_mass_pairs: int
    random_trials: int
    max_error: float

    @property
    def ok(self) -> bool:
        return self.i_hom_ok and self.j_hom_ok

    def to_dict(self) -> dict:
        return {
            "i_hom_ok": self.i_hom_ok,
            "j_hom_ok": self.j_hom_ok,
            "point_mass_pairs": self.point_mass_pairs,
            "random_trials": self.random_trials,
            "max_error": self.max_error,
        }


def _check_one(zs, factor, embed, embed_point, trials, rng, rtol, atol):
    prod = zs.product
    ok = True
    pairs = 0
    # point masses, exactly: i(delta_x * delta_y) against i(delta_x) * i(delta_y)
    for x in factor:
        for y in factor:
            pairs += 1
            xy = factor.compose(x, y)
            lhs = None if xy is None else embed_point(xy)
            rhs = prod.compose(embed_point(x), embed_point(y))
            if lhs != rhs:
                ok = False
    worst = 0.0
    for _ in range(trials):
        f1 = random_function(factor, rng)
        f2 = random_function(factor, rng)
        lhs = embed(zs, convolve(f1, f2)).to_vector()
        rhs = embed(zs, f1).to_vector(), embed(zs, f2).to_vector()
        rhs = convolve_vectors(prod, *rhs)
        err = float(np.max(np.abs(lhs - rhs)))
        scale = float(max(np.max(np.abs(lhs)), np.max(np.abs(rhs))))
        if err > max(atol, rtol * scale):
            ok = False
        worst = max(worst, err)
        lhs = embed(zs, involve(f1)).to_vector()
        rhs = involve_vector(prod, embed(zs, f1).to_vector())
        err = float(np.max(np.abs(lhs - rhs)))
        if err > max(atol, rtol * float(np.max(np.abs(lhs)))):
            ok = False
        worst = max(worst, err)
    return ok, pairs, worst


def check_embeddings_are_homomorphisms(
    zs: ZsGroupoid, trials: int = 100, seed: int = 0, rtol: float = RTOL, atol: float = ATOL
) -> HomomorphismReport:
    """Multiplicativity and *-preservation of ``i`` and ``j``.

    Exhaustive and exact on point masses; on ``trials`` random complex pairs
    per embedding within tolerance.
    """
    rng = np.random.default_rng(seed)
    i_ok, pi, ei = _check_one(zs, zs.pair.g, embed_i, zs.embed_g, trials, rng, rtol, atol)
    j_ok, pj, ej = _check_one(zs, zs.pair.h, embed_j, zs.embed_h, trials, rng, rtol, atol)
    return HomomorphismReport(i_ok, j_ok, pi + pj, trials, max(ei, ej))


def _point_mass(base, x) -> np.ndarray:
    vec = np.zeros(len(base), dtype=complex)
    vec[base.index(x)] = 1.0
    return vec


def ab_generators(zs: ZsGroupoid) -> np.ndarray:
    """Rows ``i(delta_g) * j(delta_h)`` for all ``g``, ``h``."""
    prod = zs.product
    left = [_point_mass(prod, zs.embed_g(x)) for x in zs.pair.g]
    right = [_point_mass(prod, zs.embed_h(y)) for y in zs.pair.h]
    rows = [convolve_vectors(prod, a, b) for a in left for b in right]
    return np.array(rows).reshape(len(rows), len(prod))


def ba_generators(zs: ZsGroupoid) -> np.ndarray:
    """Rows ``j(delta_h) * i(delta_g)`` for all ``h``, ``g``."""
    prod = zs.product
    left = [_point_mass(prod, zs.embed_g(x)) for x in zs.pair.g]
    right = [_point_mass(prod, zs.embed_h(y)) for y in zs.pair.h]
    rows = [convolve_vectors(prod, b, a) for b in right for a in left]
    return np.array(rows).reshape(len(rows), len(prod))


@dataclass
class EquivalenceReport:
    ab_dim: int
    ba_dim: int
    joint_dim: int
    closed_under_convolution: bool
    closed_under_involution: bool

    @property
    def spans_equal(self) -> bool:
        return self.ab_dim == self.ba_dim == self.joint_dim

    @property
    def ok(self) -> bool:
        return self.spans_equal and self.closed_under_convolution and self.closed_under_involution

    def to_dict(self) -> dict:
        return {
            "ab_dim": self.ab_dim,
            "ba_dim": self.ba_dim,
            "joint_dim": self.joint_dim,
            "spans_equal": self.spans_equal,
            "closed_under_convolution": self.closed_under_convolution,
            "closed_under_involution": self.closed_under_involution,
        }


def check_blend_equivalences(
    zs: ZsGroupoid, rank_tol: float | None = None, rtol: float = RTOL
) -> EquivalenceReport:
    """Compare ``span{a b}`` with ``span{b a}`` and test that ``span{a b}`` is a *-subalgebra.

    Closure is measured by the component of each product (and adjoint) of
    basis vectors orthogonal to the span; it is vacuous when the span is
    the whole algebra.
    """
    prod = zs.product
    ab, ba = ab_generators(zs), ba_generators(zs)
    ab_dim = numerical_rank(ab, rank_tol)
    ba_dim = numerical_rank(ba, rank_tol)
    joint = numerical_rank(np.vstack([ab, ba]), rank_tol)
    basis, complement = _row_basis(ab, rank_tol)
    conv_ok = inv_ok = True
    if complement.shape[0]:
        proj = complement.conj()
        for a in basis:
            if np.linalg.norm(proj @ involve_vector(prod, a)) > rtol * max(1.0, np.linalg.norm(a)):
                inv_ok = False
            for b in basis:
                p = convolve_vectors(prod, a, b)
                if np.linalg.norm(proj @ p) > rtol * max(1.0, np.linalg.norm(p)):
                    conv_ok = False
    return EquivalenceReport(ab_dim, ba_dim, joint, conv_ok, inv_ok)


@dataclass
class BlendWitness:
    zs: ZsGroupoid
    span_rank: int
    target_dim: int
    i_hom_ok: bool
    j_hom_ok: bool
    commuting_spans_ok: bool

    @property
    def dense(self) -> bool:
        return self.span_rank == self.target_dim

    @property
    def ok(self) -> bool:
        return self.dense and self.i_hom_ok and self.j_hom_ok and self.commuting_spans_ok

    def to_dict(self) -> dict:
        return {
            "span_rank": self.span_rank,
            "target_dim": self.target_dim,
            "dense": self.dense,
            "i_hom_ok": self.i_hom_ok,
            "j_hom_ok": self.j_hom_ok,
            "commuting_spans_ok": self.commuting_spans_ok,
        }


def blend_density(
    zs: ZsGroupoid,
    trials: int = 100,
    seed: int = 0,
    rank_tol: float | None = None,
    rtol: float = RTOL,
) -> BlendWitness:
    """Rank of ``{i(delta_g) * j(delta_h)}`` against the dimension of the product algebra."""
    span_rank = numerical_rank(ab_generators(zs), rank_tol)
    hom = check_embeddings_are_homomorphisms(zs, trials=trials, seed=seed, rtol=rtol)
    eq = check_blend_equivalences(zs, rank_tol, rtol)
    return BlendWitness(zs, span_rank, len(zs.product), hom.i_hom_ok, hom.j_hom_ok, eq.ok)
