"""Matched pairs of groupoids and their Zappa-Szép products.

Conventions: ``g`` is the groupoid of vertical arrows with range ``b``
(bottom) and source ``t`` (top); ``h`` is the groupoid of horizontal arrows
with range ``l`` (left) and source ``r`` (right).  ``unit_map`` identifies the
unit spaces.  The action ``h.g`` and restriction ``h|g`` are finite tables
defined on the fibre product ``{(h, g) : r(h) = b(g)}``.

The product lives on ``{(g, h) : t(g) = l(h)}`` with

    (g1, h1)(g2, h2) = (g1 (h1.g2), h1|g2 h2)      when r(h1) = b(g2)
    (g, h)^-1        = (h^-1 . g^-1, h^-1|g^-1)
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import DomainError, PreconditionError, VerificationFailed
from .groupoid import (
    FiniteGroupoid,
    is_isomorphism,
    is_subgroupoid,
    require_valid,
    validate_groupoid,
)
from .report import CheckReport, Violation, label

ZS_AXIOMS = tuple(f"ZS{i}" for i in range(1, 10))
DERIVED_IDENTITIES = (
    "action_on_source_unit",
    "restriction_by_range_unit",
    "inverse_of_action",
    "inverse_of_restriction",
)


class _OutOfDomain(Exception):
    pass


@dataclass(frozen=True, eq=False)
class MatchedPair:
    """Two groupoids over a common unit set with action and restriction tables."""

    g: FiniteGroupoid
    h: FiniteGroupoid
    unit_map: Mapping
    action: Mapping
    restriction: Mapping
    name: str | None = None
    _unit_inv: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "unit_map", dict(self.unit_map))
        object.__setattr__(self, "action", dict(self.action))
        object.__setattr__(self, "restriction", dict(self.restriction))
        object.__setattr__(self, "_unit_inv", {v: k for k, v in self.unit_map.items()})

    # unit bookkeeping, everything expressed in h-units
    def b(self, x):
        return self.unit_map[self.g.range(x)]

    def t(self, x):
        return self.unit_map[self.g.source(x)]

    def l(self, y):  # noqa: E743
        return self.h.range(y)

    def r(self, y):
        return self.h.source(y)

    def g_unit(self, u):
        """The g-unit identified with the h-unit ``u``."""
        return self._unit_inv[u]

    def fibre(self) -> list[tuple]:
        """``{(h, g) : r(h) = b(g)}`` ordered by (h, g)."""
        by_b = {}
        for x in self.g:
            by_b.setdefault(self.b(x), []).append(x)
        return [(y, x) for y in self.h for x in by_b.get(self.r(y), ())]

    def act(self, y, x):
        try:
            return self.action[(y, x)]
        except KeyError:
            raise _OutOfDomain(("action", y, x)) from None

    def res(self, y, x):
        try:
            return self.restriction[(y, x)]
        except KeyError:
            raise _OutOfDomain(("restriction", y, x)) from None

    def to_dict(self) -> dict:
        fib = self.fibre()
        return {
            "g": self.g.to_dict(),
            "h": self.h.to_dict(),
            "unit_map": {label(u): label(self.unit_map[u]) for u in self.g.units},
            "action": [[label(y), label(x), label(self.action[(y, x)])] for y, x in fib],
            "restriction": [
                [label(y), label(x), label(self.restriction[(y, x)])] for y, x in fib
            ],
        }

    @classmethod
    def from_dict(cls, doc: Mapping, name: str | None = None) -> MatchedPair:
        g = FiniteGroupoid.from_dict(doc["g"])
        h = FiniteGroupoid.from_dict(doc["h"])
        action = {(y, x): z for y, x, z in doc["action"]}
        restriction = {(y, x): z for y, x, z in doc["restriction"]}
        return cls(g, h, dict(doc["unit_map"]), action, restriction, name=name)


def check_domains(mp: MatchedPair) -> None:
    """Raise :class:`DomainError` unless both tables live exactly on the fibre product."""
    for what, gpd in (("g", mp.g), ("h", mp.h)):
        require_valid(gpd, f"factor {what}")
    gu, hu = set(mp.g.units), set(mp.h.units)
    if set(mp.unit_map) != gu or set(mp.unit_map.values()) != hu or len(gu) != len(hu):
        raise PreconditionError("unit_map is not a bijection between the unit spaces")
    fib = mp.fibre()
    fib_set = set(fib)
    offending = []
    for what, table, target in (
        ("action", mp.action, mp.g),
        ("restriction", mp.restriction, mp.h),
    ):
        for key in table:
            if key not in fib_set:
                offending.append((what, "defined off the fibre product", key))
            elif table[key] not in target:
                offending.append((what, f"value {label(table[key])!r} unknown", key))
        for key in fib:
            if key not in table:
                offending.append((what, "undefined on the fibre product", key))
    if offending:
        first = offending[0]
        raise DomainError(
            f"{first[0]} {first[1]} at ({label(first[2][0])}, {label(first[2][1])})"
            + (f" and {len(offending) - 1} more" if len(offending) > 1 else ""),
            offending,
        )


def verify_matched_pair(mp: MatchedPair, cap: int = 100) -> CheckReport:
    """Check (ZS1)-(ZS9) on every tuple of their natural domains.

    ZS1/ZS4 run over composable h1 h2 with r(h2) = b(g); ZS2/ZS3 over
    composable g1 g2 with r(h) = b(g1); ZS5-ZS7 over the fibre product; ZS8
    over all g; ZS9 over all h.  A lookup outside the fibre product during
    evaluation is recorded as a domain error rather than an axiom failure.
    """
    check_domains(mp)
    g, h = mp.g, mp.h
    report = CheckReport("matched pair axioms", ZS_AXIOMS, cap=cap)
    fib = mp.fibre()
    by_b = {}
    for x in g:
        by_b.setdefault(mp.b(x), []).append(x)

    def run(rule, witness, lhs_fn, rhs_fn):
        report.tick(rule)
        try:
            lhs, rhs = lhs_fn(), rhs_fn()
        except _OutOfDomain as exc:
            kind, y, x = exc.args[0]
            report.add_domain_error(Violation(
                rule, witness, detail=f"{kind} evaluated outside fibre product at ({label(y)}, {label(x)})",
            ))
            return
        if lhs is None or rhs is None:
            report.add_domain_error(Violation(
                rule, witness, lhs, rhs, detail="product of non-composable pair",
            ))
        elif lhs != rhs:
            report.add(Violation(rule, witness, lhs, rhs))

    for y1, y2 in h.composable_pairs:
        y12 = h.compose(y1, y2)
        for x in by_b.get(mp.r(y2), ()):
            w = (y1, y2, x)
            run("ZS1", w, lambda: mp.act(y12, x), lambda: mp.act(y1, mp.act(y2, x)))
            run(
                "ZS4", w,
                lambda: mp.res(y12, x),
                lambda: h.compose(mp.res(y1, mp.act(y2, x)), mp.res(y2, x)),
            )
    by_r = {}
    for y in h:
        by_r.setdefault(mp.r(y), []).append(y)
    for x1, x2 in g.composable_pairs:
        x12 = g.compose(x1, x2)
        for y in by_r.get(mp.b(x1), ()):
            w = (y, x1, x2)
            run(
                "ZS2", w,
                lambda: mp.act(y, x12),
                lambda: g.compose(mp.act(y, x1), mp.act(mp.res(y, x1), x2)),
            )
            run("ZS3", w, lambda: mp.res(y, x12), lambda: mp.res(mp.res(y, x1), x2))
    for y, x in fib:
        w = (y, x)
        run("ZS5", w, lambda: mp.b(mp.act(y, x)), lambda: mp.l(y))
        run("ZS6", w, lambda: mp.r(mp.res(y, x)), lambda: mp.t(x))
        run("ZS7", w, lambda: mp.t(mp.act(y, x)), lambda: mp.l(mp.res(y, x)))
    for x in g:
        run("ZS8", (x,), lambda: mp.act(mp.b(x), x), lambda: x)
    for y in h:
        run("ZS9", (y,), lambda: mp.res(y, mp.g_unit(mp.r(y))), lambda: y)
    return report


def check_derived_identities(mp: MatchedPair, cap: int = 100) -> CheckReport:
    """The four consequences of the axioms, checked on the whole fibre product:

    h . r(h) = l(h);  b(g)|g = t(g);  (h.g)^-1 = h|g . g^-1;  (h|g)^-1 = h^-1|(h.g).
    """
    g, h = mp.g, mp.h
    report = CheckReport("derived identities", DERIVED_IDENTITIES, cap=cap)

    def run(rule, witness, lhs_fn, rhs_fn):
        report.tick(rule)
        try:
            lhs, rhs = lhs_fn(), rhs_fn()
        except _OutOfDomain as exc:
            kind, y, x = exc.args[0]
            report.add_domain_error(Violation(
                rule, witness, detail=f"{kind} evaluated outside fibre product at ({label(y)}, {label(x)})",
            ))
            return
        if lhs != rhs:
            report.add(Violation(rule, witness, lhs, rhs))

    for y, x in mp.fibre():
        w = (y, x)
        run("action_on_source_unit", w,
            lambda: mp.unit_map.get(mp.act(y, mp.g_unit(mp.r(y)))), lambda: mp.l(y))
        run("restriction_by_range_unit", w,
            lambda: mp.res(mp.b(x), x), lambda: mp.t(x))
        run("inverse_of_action", w,
            lambda: g.inverse(mp.act(y, x)), lambda: mp.act(mp.res(y, x), g.inverse(x)))
        run("inverse_of_restriction", w,
            lambda: h.inverse(mp.res(y, x)), lambda: mp.res(h.inverse(y), mp.act(y, x)))
    return report


# -- the product groupoid -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ZsGroupoid:
    """The Zappa-Szép product with back-references to its factors."""

    product: FiniteGroupoid
    pair: MatchedPair

    def embed_g(self, x):
        """``g -> (g, t(g))``."""
        return (x, self.pair.t(x))

    def embed_h(self, y):
        """``h -> (l(h), h)``."""
        return (self.pair.g_unit(self.pair.l(y)), y)

    @property
    def g_image(self) -> tuple:
        return tuple(self.embed_g(x) for x in self.pair.g)

    @property
    def h_image(self) -> tuple:
        return tuple(self.embed_h(y) for y in self.pair.h)


def build_zs_product(mp: MatchedPair, name: str | None = None) -> ZsGroupoid:
    """Construct the product groupoid on ``{(g, h) : t(g) = l(h)}``.

    Refuses (``VerificationFailed``) unless the matched pair verifies.
    """
    report = verify_matched_pair(mp)
    if not report.ok:
        first = (report.violations or report.domain_errors)[0]
        raise VerificationFailed(f"matched pair does not verify: {first}", report)
    g, h = mp.g, mp.h
    by_l = {}
    for y in h:
        by_l.setdefault(mp.l(y), []).append(y)
    elements = [(x, y) for x in g for y in by_l.get(mp.t(x), ())]
    by_b = {}
    for e in elements:
        by_b.setdefault(mp.b(e[0]), []).append(e)
    compose = {}
    for x1, y1 in elements:
        for x2, y2 in by_b.get(mp.r(y1), ()):
            compose[((x1, y1), (x2, y2))] = (
                g.compose(x1, mp.act(y1, x2)),
                h.compose(mp.res(y1, x2), y2),
            )
    inverse = {}
    for x, y in elements:
        yi, xi = h.inverse(y), g.inverse(x)
        inverse[(x, y)] = (mp.act(yi, xi), mp.res(yi, xi))
    pname = name or (f"{mp.g.name or 'G'} x {mp.h.name or 'H'}")
    return ZsGroupoid(FiniteGroupoid(elements, compose, inverse, name=pname), mp)


# -- internal decomposition -----------------------------------------------------


@dataclass
class Decomposition:
    """Result of :func:`internal_decompose`.

    ``found`` is false when some element has zero or several factorisations;
    ``witnesses`` then lists ``(element, factorisations)`` for each of them.
    """

    found: bool
    pair: MatchedPair | None = None
    zs: ZsGroupoid | None = None
    isomorphism: dict | None = None
    report: CheckReport | None = None
    witnesses: list = field(default_factory=list)


def internal_decompose(
    k: FiniteGroupoid, gsub: Iterable, hsub: Iterable
) -> Decomposition:
    """Recognise ``k`` as an internal Zappa-Szép product of two subgroupoids.

    Requires every element of ``k`` to factor uniquely as ``g h`` with ``g`` in
    ``gsub`` and ``h`` in ``hsub``.  The action and restriction come from
    refactoring ``h g = (h.g)(h|g)``.
    """
    gsub, hsub = list(dict.fromkeys(gsub)), list(dict.fromkeys(hsub))
    for what, sub in (("gsub", gsub), ("hsub", hsub)):
        if not is_subgroupoid(k, sub):
            raise PreconditionError(f"{what} is not a subgroupoid")
    gset, hset = set(gsub), set(hsub)
    gsub = [x for x in k if x in gset]
    hsub = [y for y in k if y in hset]

    factors = {z: [] for z in k}
    for x, y in k.composable_pairs:
        if x in gset and y in hset:
            factors[k.compose(x, y)].append((x, y))
    bad = [(z, fs) for z, fs in factors.items() if len(fs) != 1]
    if bad:
        return Decomposition(False, witnesses=bad)

    gk = k.restrict(gsub, name=f"{k.name or 'K'}|G")
    hk = k.restrict(hsub, name=f"{k.name or 'K'}|H")
    unit_map = {u: u for u in gk.units}
    action, restriction = {}, {}
    for y in hsub:
        for x in gsub:
            if k.source(y) == k.range(x):
                (xa, yr), = factors[k.compose(y, x)]
                action[(y, x)] = xa
                restriction[(y, x)] = yr
    mp = MatchedPair(gk, hk, unit_map, action, restriction, name=k.name)
    report = verify_matched_pair(mp)
    if not report.ok:
        return Decomposition(False, pair=mp, report=report)
    zs = build_zs_product(mp)
    iso = {(x, y): k.compose(x, y) for x, y in zs.product}
    if not is_isomorphism(zs.product, k, iso):
        raise AssertionError("refactoring map is not an isomorphism")  # pragma: no cover
    return Decomposition(True, pair=mp, zs=zs, isomorphism=iso, report=report)


# -- reversing the order of the factors -----------------------------------------


@dataclass
class ReverseFactorization:
    """``element = left * right`` with ``left`` in the h-copy and ``right`` in the g-copy."""

    element: tuple
    left: tuple
    right: tuple
    recomposes: bool
    candidates: int

    @property
    def unique(self) -> bool:
        return self.recomposes and self.candidates == 1


def reverse_decomposition(zs: ZsGroupoid, element: tuple) -> ReverseFactorization:
    """Rewrite ``(g, h)`` as ``(l(h'), h')(g', t(g'))``.

    ``h' = h|(h^-1 . g^-1)`` and ``g' = (h^-1|g^-1) . g``.  The returned
    record also counts every h-then-g factorisation of the element, found by
    exhaustive search, so ``unique`` certifies the rewriting.
    """
    mp, prod = zs.pair, zs.product
    x, y = element
    if element not in prod:
        raise PreconditionError(f"{label(element)} is not an element of the product")
    gi, hi = mp.g.inverse(x), mp.h.inverse(y)
    y_new = mp.res(y, mp.act(hi, gi))
    x_new = mp.act(mp.res(hi, gi), x)
    left, right = zs.embed_h(y_new), zs.embed_g(x_new)
    recomposes = prod.compose(left, right) == element
    count = sum(
        1
        for a in zs.h_image
        for c in zs.g_image
        if prod.compose(a, c) == element
    )
    return ReverseFactorization(element, left, right, recomposes, count)


def trivial_matched_pair(g: FiniteGroupoid, h: FiniteGroupoid, unit_map=None, name=None) -> MatchedPair:
    """Direct-product data: ``h.g = g`` and ``h|g = h``.

    Valid when both factors are group bundles over the identified units.
    """
    if unit_map is None:
        if len(g.units) != 1 or len(h.units) != 1:
            raise PreconditionError("unit_map required unless both factors are groups")
        unit_map = {g.units[0]: h.units[0]}
    mp = MatchedPair(g, h, unit_map, {}, {})
    action = {(y, x): x for y, x in mp.fibre()}
    restriction = {(y, x): y for y, x in mp.fibre()}
    return MatchedPair(g, h, unit_map, action, restriction, name=name)


def product_report(zs: ZsGroupoid) -> dict:
    """Checks that the product is a groupoid with the expected unit count."""
    val = validate_groupoid(zs.product)
    return {
        "groupoid_ok": val.ok,
        "elements": len(zs.product),
        "units": len(zs.product.units),
        "common_units": len(zs.pair.unit_map),
    }
