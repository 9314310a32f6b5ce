"""Finite groupoids given by explicit composition and inversion tables.

A :class:`FiniteGroupoid` stores its elements in insertion order, a partial
composition table and a total inversion map.  Units, range and source are
derived from the tables (``r(x) = x x^-1``, ``s(x) = x^-1 x``) and are never
stored independently.

Elements may be any hashable value except ``None``; strings and nested tuples
of strings render as labels for the file format.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Mapping
from functools import cached_property

import networkx as nx

from .errors import PreconditionError, SearchTooLarge, StructuralError
from .report import CheckReport, Violation, label

DEFAULT_MAX_SIZE = 5000

AXIOMS = ("associativity", "involutivity", "cancellation")


class FiniteGroupoid:
    """A finite set with a partial composition and a total inversion.

    ``compose`` maps composable pairs ``(x, y)`` to ``x*y``; absent pairs are
    not composable.  The object is immutable after construction.
    """

    def __init__(
        self,
        elements: Iterable[Hashable],
        compose: Mapping[tuple, Hashable],
        inverse: Mapping[Hashable, Hashable],
        name: str | None = None,
    ):
        self._elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self._elements)}
        if len(self._index) != len(self._elements):
            seen = set()
            dup = next(x for x in self._elements if x in seen or seen.add(x))
            raise StructuralError(f"duplicate element {label(dup)!r}")
        if None in self._index:
            raise StructuralError("None is not allowed as an element")
        self._compose = dict(compose)
        self._inverse = dict(inverse)
        self.name = name
        self._check_structure()

    def _check_structure(self) -> None:
        idx = self._index
        for (x, y), z in self._compose.items():
            for role, v in (("left factor", x), ("right factor", y), ("product", z)):
                if v not in idx:
                    raise StructuralError(
                        f"compose entry {label(x)}*{label(y)}={label(z)}: unknown {role} {label(v)!r}"
                    )
        for x in self._elements:
            if x not in self._inverse:
                raise StructuralError(f"inverse undefined for {label(x)!r}")
        for x, y in self._inverse.items():
            if x not in idx:
                raise StructuralError(f"inverse given for unknown element {label(x)!r}")
            if y not in idx:
                raise StructuralError(f"inverse of {label(x)!r} is unknown element {label(y)!r}")

    # -- basic access -------------------------------------------------------

    @property
    def elements(self) -> tuple:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroupoid{name}: {len(self)} elements>"

    def index(self, x) -> int:
        return self._index[x]

    def compose(self, x, y):
        """Return ``x*y``, or ``None`` when the pair is not composable."""
        return self._compose.get((x, y))

    def composable(self, x, y) -> bool:
        return (x, y) in self._compose

    def inverse(self, x):
        return self._inverse[x]

    @cached_property
    def composable_pairs(self) -> tuple[tuple, ...]:
        """All composable pairs, ordered by (left index, right index)."""
        idx = self._index
        return tuple(sorted(self._compose, key=lambda p: (idx[p[0]], idx[p[1]])))

    @property
    def compose_table(self) -> dict:
        return dict(self._compose)

    @property
    def inverse_table(self) -> dict:
        return dict(self._inverse)

    # -- derived structure --------------------------------------------------

    @cached_property
    def _range_table(self) -> dict:
        return {x: self._compose.get((x, self._inverse[x])) for x in self._elements}

    @cached_property
    def _source_table(self) -> dict:
        return {x: self._compose.get((self._inverse[x], x)) for x in self._elements}

    def range(self, x):
        """``x * x^-1``."""
        return self._range_table[x]

    def source(self, x):
        """``x^-1 * x``."""
        return self._source_table[x]

    @cached_property
    def units(self) -> tuple:
        """The unit space ``{x x^-1}``, in element order."""
        found = {self._range_table[x] for x in self._elements}
        return tuple(x for x in self._elements if x in found)

    def is_unit(self, x) -> bool:
        return x in self._unit_set

    @cached_property
    def _unit_set(self) -> frozenset:
        return frozenset(self.units)

    @cached_property
    def _by_source(self) -> dict:
        out = {u: [] for u in self.units}
        for x in self._elements:
            out.setdefault(self.source(x), []).append(x)
        return {u: tuple(v) for u, v in out.items()}

    @cached_property
    def _by_range(self) -> dict:
        out = {u: [] for u in self.units}
        for x in self._elements:
            out.setdefault(self.range(x), []).append(x)
        return {u: tuple(v) for u, v in out.items()}

    def source_fibre(self, u) -> tuple:
        """Elements with source ``u`` (the basis of the regular representation at ``u``)."""
        return self._by_source.get(u, ())

    def range_fibre(self, u) -> tuple:
        return self._by_range.get(u, ())

    def isotropy(self, u) -> tuple:
        return tuple(x for x in self.range_fibre(u) if self.source(x) == u)

    # -- derived groupoids --------------------------------------------------

    def restrict(self, subset: Iterable, name: str | None = None) -> FiniteGroupoid:
        """The groupoid on ``subset`` with the restricted tables (subset must be closed)."""
        keep = set(subset)
        unknown = [x for x in keep if x not in self._index]
        if unknown:
            raise StructuralError(f"unknown element {label(unknown[0])!r}")
        elements = [x for x in self._elements if x in keep]
        compose = {
            (x, y): z for (x, y), z in self._compose.items() if x in keep and y in keep
        }
        inverse = {x: self._inverse[x] for x in elements}
        return FiniteGroupoid(elements, compose, inverse, name=name)

    def relabel(self, mapping: Mapping, name: str | None = None) -> FiniteGroupoid:
        """An isomorphic copy with every element renamed through ``mapping``."""
        return FiniteGroupoid(
            [mapping[x] for x in self._elements],
            {(mapping[x], mapping[y]): mapping[z] for (x, y), z in self._compose.items()},
            {mapping[x]: mapping[y] for x, y in self._inverse.items()},
            name=name if name is not None else self.name,
        )

    # -- file format ----------------------------------------------------------

    def to_dict(self) -> dict:
        """The groupoid file document; keys and entries in a fixed order."""
        labels = [label(x) for x in self._elements]
        if len(set(labels)) != len(labels):
            raise StructuralError("element labels are not unique; cannot serialise")
        return {
            "elements": labels,
            "inverse": {label(x): label(self._inverse[x]) for x in self._elements},
            "compose": [
                [label(x), label(y), label(self._compose[(x, y)])]
                for x, y in self.composable_pairs
            ],
        }

    @classmethod
    def from_dict(cls, doc: Mapping, name: str | None = None) -> FiniteGroupoid:
        elements = list(doc["elements"])
        for x in elements:
            if not isinstance(x, str) or not x:
                raise StructuralError(f"labels must be non-empty strings, got {x!r}")
        compose = {}
        for entry in doc["compose"]:
            if len(entry) != 3:
                raise StructuralError(f"compose entry {entry!r} is not a triple")
            x, y, z = entry
            if (x, y) in compose and compose[(x, y)] != z:
                raise StructuralError(f"compose entry for ({x}, {y}) given twice")
            compose[(x, y)] = z
        return cls(elements, compose, dict(doc["inverse"]), name=name)


# -- validation ---------------------------------------------------------------


def validate_groupoid(g: FiniteGroupoid, cap: int = 100) -> CheckReport:
    """Check the three groupoid axioms exhaustively.

    associativity: (x,y), (y,z) composable imply (xy,z), (x,yz) composable and
    x(yz) = (xy)z.  involutivity: (x^-1)^-1 = x.  cancellation: (x, x^-1) is
    composable and x^-1(xy) = y, (xy)y^-1 = x for composable (x, y).
    """
    report = CheckReport("groupoid axioms", AXIOMS, cap=cap)
    comp = g.compose
    inv = g.inverse

    right_of = {}
    for x, y in g.composable_pairs:
        right_of.setdefault(x, []).append(y)

    for x, y in g.composable_pairs:
        xy = comp(x, y)
        for z in right_of.get(y, ()):
            report.tick("associativity")
            yz = comp(y, z)
            left = comp(xy, z)
            right = comp(x, yz)
            if left is None or right is None:
                report.add(Violation(
                    "associativity", (x, y, z), left, right,
                    detail="(xy)z or x(yz) not composable",
                ))
            elif left != right:
                report.add(Violation("associativity", (x, y, z), left, right))
        if report.truncated:
            return report

    for x in g.elements:
        report.tick("involutivity")
        back = inv(inv(x))
        if back != x:
            report.add(Violation("involutivity", (x,), back, x, detail="(x^-1)^-1 != x"))

    for x in g.elements:
        report.tick("cancellation")
        if not g.composable(x, inv(x)):
            report.add(Violation(
                "cancellation", (x,), detail="(x, x^-1) not composable",
            ))
    for x, y in g.composable_pairs:
        report.tick("cancellation")
        xy = comp(x, y)
        left = comp(inv(x), xy)
        if left != y:
            report.add(Violation("cancellation", (x, y), left, y, detail="x^-1(xy) != y"))
        right = comp(xy, inv(y))
        if right != x:
            report.add(Violation("cancellation", (x, y), right, x, detail="(xy)y^-1 != x"))
    return report


def is_subgroupoid(k: FiniteGroupoid, sub: Iterable) -> bool:
    """True iff ``sub`` is closed under inversion and under composition within ``sub``."""
    sub = set(sub)
    unknown = [x for x in sub if x not in k]
    if unknown:
        raise StructuralError(f"unknown element {label(unknown[0])!r}")
    if any(k.inverse(x) not in sub for x in sub):
        return False
    return all(
        k.compose(x, y) in sub for x, y in k.composable_pairs if x in sub and y in sub
    )


def is_homomorphism(a: FiniteGroupoid, b: FiniteGroupoid, phi: Mapping) -> bool:
    """``phi`` preserves composition on every composable pair of ``a``."""
    for x, y in a.composable_pairs:
        img = b.compose(phi[x], phi[y])
        if img is None or img != phi[a.compose(x, y)]:
            return False
    return True


def is_isomorphism(a: FiniteGroupoid, b: FiniteGroupoid, phi: Mapping) -> bool:
    """Bijective, composition preserving, and composability reflecting."""
    if len(a) != len(b) or set(phi) != set(a.elements):
        return False
    if set(phi.values()) != set(b.elements):
        return False
    if len(a.composable_pairs) != len(b.composable_pairs):
        return False
    return is_homomorphism(a, b, phi)


# -- isomorphism search -------------------------------------------------------


def _signature(g: FiniteGroupoid, x):
    r, s = g.range(x), g.source(x)
    order = 0
    if r == s:
        power, order = x, 1
        while power != r and power is not None and order <= len(g):
            power = g.compose(power, x)
            order += 1
    return (
        g.is_unit(x),
        r == s,
        order,
        len(g.range_fibre(r)),
        len(g.isotropy(r)),
    )


def find_isomorphism(
    a: FiniteGroupoid, b: FiniteGroupoid, max_size: int = DEFAULT_MAX_SIZE
) -> dict | None:
    """Search for a groupoid isomorphism ``a -> b``.

    Backtracking over signature-compatible assignments in element order; each
    tentative assignment is closed under inverses and products with the
    elements already assigned.  Returns the bijection or ``None``.
    """
    if len(a) > max_size or len(b) > max_size:
        raise SearchTooLarge(
            f"search too large: {max(len(a), len(b))} elements exceeds bound {max_size}"
        )
    if len(a) != len(b) or len(a.units) != len(b.units):
        return None
    if len(a.composable_pairs) != len(b.composable_pairs):
        return None
    sig_a = {x: _signature(a, x) for x in a}
    sig_b = {y: _signature(b, y) for y in b}
    if sorted(map(repr, sig_a.values())) != sorted(map(repr, sig_b.values())):
        return None
    candidates = {x: [y for y in b if sig_b[y] == sig_a[x]] for x in a}

    def extend(phi, psi, x, y):
        phi, psi = dict(phi), dict(psi)
        pending = [(x, y)]
        while pending:
            x, y = pending.pop()
            if x in phi:
                if phi[x] != y:
                    return None
                continue
            if y in psi or sig_a[x] != sig_b[y]:
                return None
            assigned = list(phi.items())
            phi[x], psi[y] = y, x
            pending.append((a.inverse(x), b.inverse(y)))
            for z, w in assigned + [(x, y)]:
                for p, q in ((a.compose(x, z), b.compose(y, w)), (a.compose(z, x), b.compose(w, y))):
                    if (p is None) != (q is None):
                        return None
                    if p is not None:
                        pending.append((p, q))
        return phi, psi

    order = list(a.elements)
    stack = [({}, {}, 0)]
    while stack:
        phi, psi, start = stack.pop()
        nxt = next((i for i in range(start, len(order)) if order[i] not in phi), None)
        if nxt is None:
            return phi
        x = order[nxt]
        branches = []
        for y in candidates[x]:
            if y in psi:
                continue
            res = extend(phi, psi, x, y)
            if res is not None:
                branches.append((res[0], res[1], nxt + 1))
        stack.extend(reversed(branches))
    return None


# -- slices -----------------------------------------------------------------


def is_slice(g: FiniteGroupoid, subset: Iterable) -> bool:
    """Range and source are each injective on ``subset``."""
    subset = list(dict.fromkeys(subset))
    unknown = [x for x in subset if x not in g]
    if unknown:
        raise StructuralError(f"unknown element {label(unknown[0])!r}")
    ranges = [g.range(x) for x in subset]
    sources = [g.source(x) for x in subset]
    return len(set(ranges)) == len(subset) and len(set(sources)) == len(subset)


def enumerate_slices(g: FiniteGroupoid, max_size: int = DEFAULT_MAX_SIZE) -> list[tuple]:
    """All inclusion-maximal slices, each in element order, sorted by element index.

    Maximal slices are the maximal cliques of the graph joining two elements
    when they differ in both range and source.
    """
    if len(g) > max_size:
        raise SearchTooLarge(f"search too large: {len(g)} elements exceeds bound {max_size}")
    compat = nx.Graph()
    compat.add_nodes_from(range(len(g)))
    for i, j in itertools.combinations(range(len(g)), 2):
        x, y = g.elements[i], g.elements[j]
        if g.range(x) != g.range(y) and g.source(x) != g.source(y):
            compat.add_edge(i, j)
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(compat))
    return [tuple(g.elements[i] for i in c) for c in cliques]


def require_valid(g: FiniteGroupoid, what: str = "groupoid") -> None:
    report = validate_groupoid(g)
    if not report.ok:
        raise PreconditionError(f"{what} is not a groupoid: {report.violations[0]}")
