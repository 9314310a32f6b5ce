"""Independent reference computations used to derive expected values in tests.

These deliberately avoid the package's own algorithms: brute force over
permutations, naive double loops, and exact rational rank via sympy.
"""

from __future__ import annotations

import itertools

import numpy as np
import sympy


def brute_isomorphic(a, b) -> bool:
    """Try every bijection; only for tiny groupoids."""
    if len(a) != len(b):
        return False
    xs, ys = list(a.elements), list(b.elements)
    pairs = list(a.composable_pairs)
    if len(b.composable_pairs) != len(pairs):
        return False
    for perm in itertools.permutations(ys):
        phi = dict(zip(xs, perm))
        if all(b.compose(phi[x], phi[y]) == phi[a.compose(x, y)] for x, y in pairs):
            return True
    return False


def naive_convolution(base, f: dict, k: dict) -> dict:
    out = {}
    for x in base:
        for y in base:
            z = base.compose(x, y)
            if z is not None:
                out[z] = out.get(z, 0) + f.get(x, 0) * k.get(y, 0)
    return {z: v for z, v in out.items() if v != 0}


def naive_i_norm(base, f: dict) -> float:
    best = 0.0
    for u in base.units:
        inc = sum(abs(f.get(x, 0)) for x in base if base.range(x) == u)
        out = sum(abs(f.get(x, 0)) for x in base if base.source(x) == u)
        best = max(best, inc, out)
    return best


def operator_norm_via_eigen(mat: np.ndarray) -> float:
    """sqrt of the largest eigenvalue of M* M (not via SVD)."""
    if mat.size == 0:
        return 0.0
    return float(np.sqrt(max(np.linalg.eigvalsh(mat.conj().T @ mat).max(), 0.0)))


def exact_rank(rows) -> int:
    """Rank over the rationals of a real integer-valued matrix."""
    mat = sympy.Matrix([[sympy.nsimplify(round(float(np.real(v)), 12)) for v in row] for row in rows])
    return mat.rank()


def zs_product_elements(mp) -> list:
    """Pairs ``(g, h)`` with ``t(g) = l(h)``, straight from the definition."""
    out = []
    for x in mp.g:
        for y in mp.h:
            if mp.unit_map[mp.g.source(x)] == mp.h.range(y):
                out.append((x, y))
    return out
