"""Factories for concrete groupoids and the example families built from them.

Basic families (cyclic and symmetric groups, pair groupoids, unit groupoids,
direct products, disjoint unions), transformation groupoids of group actions,
skew products by a group-valued cocycle, the matched pair whose product
realises ``G(c)`` together with a group, and the semidirect product used to
re-express that product as a skew product.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import InvalidConstruction, PreconditionError
from .groupoid import FiniteGroupoid, is_isomorphism, validate_groupoid
from .report import label
from .zs import MatchedPair, ZsGroupoid, build_zs_product, verify_matched_pair

# -- basic families -------------------------------------------------------------


def group_from_operation(
    elements: Sequence, op: Callable, name: str | None = None
) -> FiniteGroupoid:
    """A group (one-unit groupoid) from a total multiplication ``op``."""
    elements = list(elements)
    compose = {(x, y): op(x, y) for x in elements for y in elements}
    identity = next(
        e for e in elements if all(compose[(e, x)] == x == compose[(x, e)] for x in elements)
    )
    inverse = {x: next(y for y in elements if compose[(x, y)] == identity) for x in elements}
    return FiniteGroupoid(elements, compose, inverse, name=name)


def cyclic_group(n: int, labels: Sequence[str] | None = None, name: str | None = None) -> FiniteGroupoid:
    """``Z/n``; default labels ``e, a, a2, ..., a{n-1}``."""
    if labels is None:
        labels = ["e", "a"] + [f"a{k}" for k in range(2, n)]
        labels = labels[:n]
    labels = list(labels)
    return group_from_operation(
        labels, lambda x, y: labels[(labels.index(x) + labels.index(y)) % n], name=name or f"Z{n}"
    )


def _perm_compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def symmetric_group(n: int, name: str | None = None) -> FiniteGroupoid:
    """``S_n`` on one-line labels such as ``"102"``; ``(pq)(i) = p(q(i))``."""
    perms = list(itertools.permutations(range(n)))
    names = {p: "".join(map(str, p)) for p in perms}
    back = {v: k for k, v in names.items()}
    return group_from_operation(
        [names[p] for p in perms],
        lambda x, y: names[_perm_compose(back[x], back[y])],
        name=name or f"S{n}",
    )


def s3() -> FiniteGroupoid:
    """``S_3`` with labels ``e, r, r2, s, sr, sr2`` (r a 3-cycle, s a transposition)."""
    r, s, e = (1, 2, 0), (1, 0, 2), (0, 1, 2)
    r2 = _perm_compose(r, r)
    named = {
        "e": e, "r": r, "r2": r2,
        "s": s, "sr": _perm_compose(s, r), "sr2": _perm_compose(s, r2),
    }
    back = {v: k for k, v in named.items()}
    return group_from_operation(
        list(named), lambda x, y: back[_perm_compose(named[x], named[y])], name="S3"
    )


def pair_groupoid(points: Sequence, name: str | None = None) -> FiniteGroupoid:
    """Elements ``(i, j)`` with ``(i, j)(j, k) = (i, k)`` and ``(i, j)^-1 = (j, i)``."""
    points = list(points)
    elements = [(i, j) for i in points for j in points]
    compose = {((i, j), (j2, k)): (i, k) for i, j in elements for j2, k in elements if j == j2}
    inverse = {(i, j): (j, i) for i, j in elements}
    return FiniteGroupoid(elements, compose, inverse, name=name or f"Pair{len(points)}")


def unit_groupoid(units: Iterable, name: str | None = None) -> FiniteGroupoid:
    units = list(units)
    return FiniteGroupoid(units, {(u, u): u for u in units}, {u: u for u in units}, name=name)


def direct_product(a: FiniteGroupoid, b: FiniteGroupoid, name: str | None = None) -> FiniteGroupoid:
    """Componentwise product; ``(x, y)`` composes with ``(x', y')`` when both coordinates do."""
    elements = [(x, y) for x in a for y in b]
    compose = {
        ((x1, y1), (x2, y2)): (a.compose(x1, x2), b.compose(y1, y2))
        for x1, x2 in a.composable_pairs
        for y1, y2 in b.composable_pairs
    }
    inverse = {(x, y): (a.inverse(x), b.inverse(y)) for x, y in elements}
    return FiniteGroupoid(elements, compose, inverse, name=name)


def disjoint_union(parts: Sequence[FiniteGroupoid], name: str | None = None) -> FiniteGroupoid:
    """Elements tagged ``(str(k), x)`` by component index ``k``."""
    elements, compose, inverse = [], {}, {}
    for k, part in enumerate(parts):
        tag = str(k)
        elements += [(tag, x) for x in part]
        compose.update({((tag, x), (tag, y)): (tag, z) for (x, y), z in part.compose_table.items()})
        inverse.update({(tag, x): (tag, part.inverse(x)) for x in part})
    return FiniteGroupoid(elements, compose, inverse, name=name)


def _require_group(a: FiniteGroupoid, what: str) -> None:
    if len(a.units) != 1:
        raise PreconditionError(f"{what} must be a group (exactly one unit), found {len(a.units)}")


# -- transformation groupoids ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroupAction:
    """A left action of a finite group on a finite set, as a table ``(g, x) -> g.x``."""

    group: FiniteGroupoid
    carrier: tuple
    act: Mapping

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "act", dict(self.act))

    def check(self) -> None:
        """Raise :class:`InvalidConstruction` with a witness unless this is an action."""
        _require_group(self.group, "acting group")
        e = self.group.units[0]
        points = set(self.carrier)
        for g in self.group:
            for x in self.carrier:
                y = self.act.get((g, x))
                if y is None or y not in points:
                    raise InvalidConstruction(
                        f"action undefined or off the carrier at ({label(g)}, {label(x)})", (g, x)
                    )
        for x in self.carrier:
            if self.act[(e, x)] != x:
                raise InvalidConstruction(f"identity moves {label(x)}", (e, x))
        for g, h in self.group.composable_pairs:
            gh = self.group.compose(g, h)
            for x in self.carrier:
                if self.act[(g, self.act[(h, x)])] != self.act[(gh, x)]:
                    raise InvalidConstruction(
                        f"g.(h.x) != (gh).x at ({label(g)}, {label(h)}, {label(x)})", (g, h, x)
                    )


def transformation_groupoid(action: FiniteGroupAction, name: str | None = None) -> FiniteGroupoid:
    """``G x X`` with ``(g, h.x)(h, x) = (gh, x)`` and ``(g, x)^-1 = (g^-1, g.x)``.

    ``(g, x)`` has source ``x`` and range ``g.x``.
    """
    action.check()
    G, act = action.group, action.act
    elements = [(g, x) for g in G for x in action.carrier]
    compose = {
        ((g, act[(h, x)]), (h, x)): (G.compose(g, h), x)
        for g in G
        for h in G
        for x in action.carrier
    }
    inverse = {(g, x): (G.inverse(g), act[(g, x)]) for g, x in elements}
    return FiniteGroupoid(elements, compose, inverse, name=name)


# -- cocycles and skew products ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cocycle:
    """A groupoid homomorphism into a finite group."""

    domain: FiniteGroupoid
    target: FiniteGroupoid
    map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "map", dict(self.map))

    def __call__(self, x):
        return self.map[x]

    def check(self) -> None:
        """Raise :class:`InvalidConstruction` unless ``c(xy) = c(x)c(y)`` on composable pairs."""
        _require_group(self.target, "cocycle target")
        for x in self.domain:
            if self.map.get(x) not in self.target:
                raise InvalidConstruction(f"cocycle undefined or off target at {label(x)}", (x,))
        A = self.target
        for x, y in self.domain.composable_pairs:
            lhs = self.map[self.domain.compose(x, y)]
            rhs = A.compose(self.map[x], self.map[y])
            if lhs != rhs:
                raise InvalidConstruction(
                    f"c(xy) != c(x)c(y) at ({label(x)}, {label(y)})", (x, y)
                )

    def to_dict(self) -> dict:
        return {
            "groupoid": self.domain.to_dict(),
            "group": self.target.to_dict(),
            "map": {label(x): label(self.map[x]) for x in self.domain},
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> Cocycle:
        return cls(
            FiniteGroupoid.from_dict(doc["groupoid"]),
            FiniteGroupoid.from_dict(doc["group"]),
            dict(doc["map"]),
        )


def skew_product(g: FiniteGroupoid, c: Cocycle, name: str | None = None) -> FiniteGroupoid:
    """``G(c)`` on ``G x A``: ``(x, a)(y, a c(x)) = (xy, a)``, ``(x, a)^-1 = (x^-1, a c(x))``.

    Units are ``G^(0) x A``; ``(x, a)`` has range ``(r(x), a)`` and source
    ``(s(x), a c(x))``.
    """
    if c.domain is not g:
        raise PreconditionError("cocycle is defined on a different groupoid")
    c.check()
    A = c.target
    elements = [(x, a) for x in g for a in A]
    compose = {}
    for x, y in g.composable_pairs:
        xy = g.compose(x, y)
        for a in A:
            compose[((x, a), (y, A.compose(a, c(x))))] = (xy, a)
    inverse = {(x, a): (g.inverse(x), A.compose(a, c(x))) for x, a in elements}
    return FiniteGroupoid(elements, compose, inverse, name=name or f"{g.name or 'G'}(c)")


def skew_matched_pair(g: FiniteGroupoid, c: Cocycle) -> MatchedPair:
    """The matched pair ``(G(c), H)`` with ``H = A x| (G^(0) x A)``.

    ``A`` acts on ``G^(0) x A`` by ``b.(u, a) = (u, a b^-1)``.  For ``h = (b, (r(x), a))``
    and ``(x, a)`` in ``G(c)``::

        h . (x, a)  = (x, a b^-1)
        h | (x, a)  = (c(x)^-1 b c(x), (s(x), a c(x)))
    """
    gc = skew_product(g, c)
    A = c.target
    e = A.units[0]
    carrier = [(u, a) for u in g.units for a in A]
    act = {(b, (u, a)): (u, A.compose(a, A.inverse(b))) for b in A for u, a in carrier}
    h = transformation_groupoid(FiniteGroupAction(A, carrier, act), name=f"{A.name or 'A'} x| units")
    unit_map = {(u, a): (e, (u, a)) for u, a in carrier}
    shell = MatchedPair(gc, h, unit_map, {}, {})
    action, restriction = {}, {}
    for hy, gx in shell.fibre():
        b, _ = hy
        x, a = gx
        cx = c(x)
        action[(hy, gx)] = (x, A.compose(a, A.inverse(b)))
        conj = A.compose(A.compose(A.inverse(cx), b), cx)
        restriction[(hy, gx)] = (conj, (g.source(x), A.compose(a, cx)))
    return MatchedPair(gc, h, unit_map, action, restriction, name=f"skew({g.name or 'G'})")


def semidirect_product(g: FiniteGroupoid, c: Cocycle, name: str | None = None) -> FiniteGroupoid:
    """``G x| A`` for the right action ``a.x = c(x)^-1 a c(x)``.

    ``(x, a)(y, b) = (xy, c(y)^-1 a c(y) b)`` for composable ``x, y``;
    ``(x, a)^-1 = (x^-1, c(x) a^-1 c(x)^-1)``.
    """
    A = c.target
    mul, inv = A.compose, A.inverse
    elements = [(x, a) for x in g for a in A]
    compose = {}
    for x, y in g.composable_pairs:
        cy = c(y)
        for a in A:
            twisted = mul(mul(inv(cy), a), cy)
            for b in A:
                compose[((x, a), (y, b))] = (g.compose(x, y), mul(twisted, b))
    inverse = {}
    for x, a in elements:
        cx = c(x)
        inverse[(x, a)] = (g.inverse(x), mul(mul(cx, inv(a)), inv(cx)))
    return FiniteGroupoid(elements, compose, inverse, name=name or f"{g.name or 'G'} x| A")


def semidirect_cocycle(sd: FiniteGroupoid, c: Cocycle) -> Cocycle:
    """``(x, a) -> c(x) a`` on the semidirect product."""
    A = c.target
    return Cocycle(sd, A, {(x, a): A.compose(c(x), a) for x, a in sd})


@dataclass
class StageReport:
    """Outcome of a multi-stage construction check; ``failed_stage`` names the first failure."""

    name: str
    stages: dict = field(default_factory=dict)
    failed_stage: str | None = None
    detail: str = ""
    elements: int = 0
    mapping: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failed_stage is None

    def passed(self, stage: str) -> None:
        self.stages[stage] = "ok"

    def fail(self, stage: str, detail: str) -> StageReport:
        self.stages[stage] = "failed"
        self.failed_stage = stage
        self.detail = detail
        return self

    def to_dict(self) -> dict:
        return {
            "status": "ok" if self.ok else "violations",
            "check": self.name,
            "stages": dict(self.stages),
            "failed_stage": self.failed_stage,
            "detail": self.detail,
            "elements": self.elements,
        }


def skew_isomorphism_map(zs: ZsGroupoid, skew_sd: FiniteGroupoid, c: Cocycle) -> dict:
    """``((x, a), b) -> ((x, b), (a, (s(x), b c(x) a)))``.

    The skew coordinate ``b`` becomes the ``G(c)`` coordinate and the
    semidirect coordinate ``a`` becomes the transformation-groupoid group
    element; this is the assignment under which composition is preserved.
    """
    A = c.target
    g = c.domain
    return {
        ((x, a), b): ((x, b), (a, (g.source(x), A.compose(A.compose(b, c(x)), a))))
        for (x, a), b in skew_sd
    }


def semidirect_skew_isomorphism_check(g: FiniteGroupoid, c: Cocycle) -> StageReport:
    """Check ``(G x| A)(c~) ~= G(c) |x| H`` through the explicit map.

    Stages: cocycle, semidirect, semidirect_cocycle, skew_of_semidirect,
    zs_product, isomorphism.  Aborts at the first failing stage.
    """
    rep = StageReport("semidirect-skew isomorphism")
    try:
        c.check()
    except InvalidConstruction as exc:
        return rep.fail("cocycle", str(exc))
    rep.passed("cocycle")

    sd = semidirect_product(g, c)
    val = validate_groupoid(sd)
    if not val.ok:
        return rep.fail("semidirect", str(val.violations[0]))
    rep.passed("semidirect")

    ct = semidirect_cocycle(sd, c)
    try:
        ct.check()
    except InvalidConstruction as exc:
        return rep.fail("semidirect_cocycle", str(exc))
    rep.passed("semidirect_cocycle")

    skew_sd = skew_product(sd, ct)
    val = validate_groupoid(skew_sd)
    if not val.ok:
        return rep.fail("skew_of_semidirect", str(val.violations[0]))
    rep.passed("skew_of_semidirect")

    mp = skew_matched_pair(g, c)
    mp_report = verify_matched_pair(mp)
    if not mp_report.ok:
        return rep.fail("zs_product", str((mp_report.violations or mp_report.domain_errors)[0]))
    zs = build_zs_product(mp)
    val = validate_groupoid(zs.product)
    if not val.ok:
        return rep.fail("zs_product", str(val.violations[0]))
    rep.passed("zs_product")

    phi = skew_isomorphism_map(zs, skew_sd, c)
    rep.elements = len(skew_sd)
    missing = [v for v in phi.values() if v not in zs.product]
    if missing:
        return rep.fail("isomorphism", f"image {label(missing[0])} is not a product element")
    if not is_isomorphism(skew_sd, zs.product, phi):
        return rep.fail("isomorphism", "map is not a composition-preserving bijection")
    rep.passed("isomorphism")
    rep.mapping = phi
    return rep
