"""Commuting endomorphisms of a finite set and windowed Deaconu-Renault groupoids.

On a finite carrier a surjective map is a bijection, so the dynamics here are
permutations; the fill-in and decomposition logic is nonetheless exactly the
one used for genuine endomorphisms.

A Deaconu-Renault groupoid is infinite, so we work with a *window*: the
triples ``(x, m - n, y)`` with ``theta_m(x) = theta_n(y)`` and every exponent
at most ``K``.  A window is a view, not a groupoid; products leaving the
window are skipped and counted.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field

from .errors import InvalidConstruction, PreconditionError
from .report import Violation, label


@dataclass(frozen=True, eq=False)
class EndoPair:
    """Two self-maps ``s_map``, ``t_map`` of a finite carrier."""

    carrier: tuple
    s_map: Mapping
    t_map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "s_map", dict(self.s_map))
        object.__setattr__(self, "t_map", dict(self.t_map))

    def check(self) -> None:
        """Maps must be total on the carrier and surjective."""
        points = set(self.carrier)
        for name, m in (("s", self.s_map), ("t", self.t_map)):
            for x in self.carrier:
                if m.get(x) not in points:
                    raise InvalidConstruction(f"{name} undefined or off the carrier at {label(x)}", (x,))
            missed = [x for x in self.carrier if x not in set(m.values())]
            if missed:
                raise InvalidConstruction(f"{name} is not surjective: misses {label(missed[0])}", (missed[0],))

    def to_dict(self) -> dict:
        return {
            "carrier": [label(x) for x in self.carrier],
            "s": {label(x): label(self.s_map[x]) for x in self.carrier},
            "t": {label(x): label(self.t_map[x]) for x in self.carrier},
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> EndoPair:
        return cls(tuple(doc["carrier"]), dict(doc["s"]), dict(doc["t"]))


def iterate(m: Mapping, x, k: int):
    for _ in range(k):
        x = m[x]
    return x


@dataclass
class StarCommuteReport:
    commute: bool
    star_commute: bool
    witnesses: list = field(default_factory=list)
    pairs_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "commute": self.commute,
            "star_commute": self.star_commute,
            "pairs_checked": self.pairs_checked,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def star_commuting_check(pair: EndoPair) -> StarCommuteReport:
    """``S`` and ``T`` commute, and every ``Tx = Sy`` has exactly one ``z`` with ``Sz = x``, ``Tz = y``."""
    pair.check()
    S, T = pair.s_map, pair.t_map
    witnesses = []
    commute = True
    for x in pair.carrier:
        if S[T[x]] != T[S[x]]:
            commute = False
            witnesses.append(Violation("commute", (x,), S[T[x]], T[S[x]]))
    star = True
    checked = 0
    for x in pair.carrier:
        for y in pair.carrier:
            if T[x] != S[y]:
                continue
            checked += 1
            zs = [z for z in pair.carrier if S[z] == x and T[z] == y]
            if len(zs) != 1:
                star = False
                witnesses.append(Violation(
                    "star_commute", (x, y), len(zs), 1, detail=f"{len(zs)} common preimages",
                ))
    return StarCommuteReport(commute, commute and star, witnesses, checked)


@dataclass(frozen=True, eq=False)
class WindowedDR:
    """Triples ``(x, lag, y)`` realisable with exponents at most ``lag_bound``.

    ``lag`` is an ``int`` for a single map and a pair for an ``EndoPair``;
    ``exponents[element]`` is the minimal ``(m, n)`` realising it.
    """

    endo: object
    lag_bound: int
    elements: tuple
    exponents: Mapping

    def __contains__(self, el) -> bool:
        return el in self.exponents

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def compose(a: tuple, b: tuple):
        """``(x, k, y)(y, l, z) = (x, k + l, z)``; ``None`` if the middle points differ."""
        x, k, y = a
        y2, l, z = b
        if y != y2:
            return None
        if isinstance(k, tuple):
            return (x, tuple(p + q for p, q in zip(k, l)), z)
        return (x, k + l, z)

    @staticmethod
    def inverse(a: tuple) -> tuple:
        x, k, y = a
        if isinstance(k, tuple):
            return (y, tuple(-p for p in k), x)
        return (y, -k, x)

    def product(self, a: tuple, b: tuple):
        """Product inside the window, or ``None`` if undefined or outside it."""
        c = self.compose(a, b)
        return c if c in self.exponents else None


def _theta(endo, m, x):
    if isinstance(endo, EndoPair):
        return iterate(endo.s_map, iterate(endo.t_map, x, m[1]), m[0])
    return iterate(endo, x, m)


def dr_window(endo, K: int) -> WindowedDR:
    """All ``(x, m - n, y)`` with exponents in ``[0, K]`` and ``theta_m(x) = theta_n(y)``.

    ``endo`` is a single self-map (a mapping) or an :class:`EndoPair` acting
    through ``theta_(m1, m2) = S^m1 T^m2``.
    """
    if K < 0:
        raise PreconditionError("lag bound must be non-negative")
    if isinstance(endo, EndoPair):
        endo.check()
        carrier = endo.carrier
        exps = list(itertools.product(range(K + 1), repeat=2))

        def lag(m, n):
            return (m[0] - n[0], m[1] - n[1])
    else:
        endo = dict(endo)
        carrier = tuple(endo)
        if set(endo.values()) != set(carrier):
            raise InvalidConstruction("map is not a surjection of its domain")
        exps = list(range(K + 1))

        def lag(m, n):
            return m - n

    index = {x: i for i, x in enumerate(carrier)}
    images = {(m, x): _theta(endo, m, x) for m in exps for x in carrier}
    found = {}
    for m in exps:
        for n in exps:
            for x in carrier:
                tx = images[(m, x)]
                for y in carrier:
                    if images[(n, y)] != tx:
                        continue
                    el = (x, lag(m, n), y)
                    key = (_weight(m) + _weight(n), m, n)
                    if el not in found or key < found[el][0]:
                        found[el] = (key, (m, n))
    order = sorted(found, key=lambda e: (index[e[0]], e[1], index[e[2]]))
    return WindowedDR(endo, K, tuple(order), {e: found[e][1] for e in order})


def _weight(m) -> int:
    return sum(m) if isinstance(m, tuple) else m


@dataclass
class DecompositionCheck:
    """Per-element fill-in and factorisation counts for a windowed ``N^2`` groupoid."""

    lag_bound: int
    total: int = 0
    unique_fill_in: int = 0
    unique_factorization: int = 0
    recomposed: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        checked = self.total - self.skipped
        return (
            not self.violations
            and self.unique_fill_in == self.total
            and self.unique_factorization == checked
            and self.recomposed == checked
        )

    def to_dict(self) -> dict:
        return {
            "status": "ok" if self.ok else "violations",
            "lag_bound": self.lag_bound,
            "elements": self.total,
            "unique_fill_in": self.unique_fill_in,
            "unique_factorization": self.unique_factorization,
            "recomposed": self.recomposed,
            "skipped": self.skipped,
            "violations": [v.to_dict() for v in self.violations],
        }


def dr_zs_decomposition_check(pair: EndoPair, K: int, cap: int = 100) -> DecompositionCheck:
    """Split every windowed ``(x, m - n, y)`` as an S-part times a T-part.

    With the minimal exponents ``m = (m1, m2)``, ``n = (n1, n2)`` the middle
    point ``z`` must be the unique solution of ``S^n1 z = S^m1 x`` and
    ``T^m2 z = T^n2 y``; then ``(x, m1 - n1, z)`` and ``(z, m2 - n2, y)`` must
    lie in the single-map windows, compose back to the element, and be the
    only such factorisation.
    """
    star = star_commuting_check(pair)
    if not star.star_commute:
        raise PreconditionError("maps do not *-commute")
    S, T = pair.s_map, pair.t_map
    full = dr_window(pair, K)
    ws, wt = dr_window(S, K), dr_window(T, K)
    rep = DecompositionCheck(K)

    def flag(v):
        if len(rep.violations) < cap:
            rep.violations.append(v)

    for el in full.elements:
        rep.total += 1
        x, (k1, k2), y = el
        (m1, m2), (n1, n2) = full.exponents[el]
        target_s = iterate(S, x, m1)
        target_t = iterate(T, y, n2)
        fills = [
            z for z in pair.carrier
            if iterate(S, z, n1) == target_s and iterate(T, z, m2) == target_t
        ]
        if len(fills) != 1:
            flag(Violation("fill_in", (el,), len(fills), 1, detail="fill-in point not unique"))
            continue
        rep.unique_fill_in += 1
        z = fills[0]
        s_part, t_part = (x, k1, z), (z, k2, y)
        if s_part not in ws or t_part not in wt:
            rep.skipped += 1
            continue
        back = full.compose((x, (k1, 0), z), (z, (0, k2), y))
        if back == el:
            rep.recomposed += 1
        else:
            flag(Violation("recompose", (el,), back, el))
        mids = [w for w in pair.carrier if (x, k1, w) in ws and (w, k2, y) in wt]
        if mids == [z]:
            rep.unique_factorization += 1
        else:
            flag(Violation(
                "factorization", (el,), len(mids), 1, detail="factorisations through the windows",
            ))
    return rep
