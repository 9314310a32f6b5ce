"""Finite 2-graphs given by coloured edges and an explicit set of commuting squares.

A square ``(f, e, e2, f2)`` says the blue-red path ``f e`` equals the red-blue
path ``e2 f2`` (paths are written range-first, so ``s(f) = r(e)``).  The
degree-(1,1) factorisation property is that the squares are a bijection
between composable blue-red and red-blue paths respecting range and source.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import networkx as nx

from .errors import PreconditionError
from .report import CheckReport, Violation

TWO_GRAPH_RULES = ("edges", "square_paths", "square_endpoints", "blue_red_bijective", "red_blue_bijective")


@dataclass(frozen=True, eq=False)
class TwoGraphPresentation:
    """``blue`` and ``red`` map an edge name to its ``(range, source)``."""

    vertices: tuple
    blue: Mapping
    red: Mapping
    squares: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "blue", {k: tuple(v) for k, v in self.blue.items()})
        object.__setattr__(self, "red", {k: tuple(v) for k, v in self.red.items()})
        object.__setattr__(self, "squares", tuple(tuple(s) for s in self.squares))

    def rng(self, edge):
        return (self.blue.get(edge) or self.red[edge])[0]

    def src(self, edge):
        return (self.blue.get(edge) or self.red[edge])[1]

    def blue_red_paths(self) -> list[tuple]:
        """Composable ``(f, e)`` with ``f`` blue, ``e`` red, ``s(f) = r(e)``."""
        return [(f, e) for f, (_, fs) in self.blue.items() for e, (er, _) in self.red.items() if fs == er]

    def red_blue_paths(self) -> list[tuple]:
        return [(e, f) for e, (_, es) in self.red.items() for f, (fr, _) in self.blue.items() if es == fr]

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "blue": [[k, r, s] for k, (r, s) in self.blue.items()],
            "red": [[k, r, s] for k, (r, s) in self.red.items()],
            "squares": [list(sq) for sq in self.squares],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> TwoGraphPresentation:
        return cls(
            tuple(doc["vertices"]),
            {k: (r, s) for k, r, s in doc["blue"]},
            {k: (r, s) for k, r, s in doc["red"]},
            tuple(tuple(sq) for sq in doc["squares"]),
        )


def validate_two_graph(tg: TwoGraphPresentation, cap: int = 100) -> CheckReport:
    """Edges reference known vertices and the squares realise the factorisation property."""
    rep = CheckReport("two_graph", TWO_GRAPH_RULES, cap=cap)
    verts = set(tg.vertices)
    for name, (r, s) in list(tg.blue.items()) + list(tg.red.items()):
        rep.tick("edges")
        if r not in verts or s not in verts:
            rep.add(Violation("edges", (name,), (r, s), None, detail="endpoint is not a vertex"))
    for name in set(tg.blue) & set(tg.red):
        rep.add(Violation("edges", (name,), "blue", "red", detail="edge is both blue and red"))
    if rep.violations:
        return rep

    seen_br: dict = {}
    seen_rb: dict = {}
    for sq in tg.squares:
        rep.tick("square_paths")
        if len(sq) != 4:
            rep.add(Violation("square_paths", (sq,), len(sq), 4, detail="square is not a 4-tuple"))
            continue
        f, e, e2, f2 = sq
        well_typed = f in tg.blue and e in tg.red and e2 in tg.red and f2 in tg.blue
        if not well_typed:
            rep.add(Violation("square_paths", sq, None, None, detail="expected (blue, red, red, blue)"))
            continue
        if tg.src(f) != tg.rng(e):
            rep.add(Violation("square_paths", (f, e), tg.src(f), tg.rng(e), detail="f e not composable"))
        if tg.src(e2) != tg.rng(f2):
            rep.add(Violation("square_paths", (e2, f2), tg.src(e2), tg.rng(f2), detail="e2 f2 not composable"))
        if tg.rng(f) != tg.rng(e2):
            rep.add(Violation("square_endpoints", sq, tg.rng(f), tg.rng(e2), detail="ranges differ"))
        if tg.src(e) != tg.src(f2):
            rep.add(Violation("square_endpoints", sq, tg.src(e), tg.src(f2), detail="sources differ"))
        seen_br.setdefault((f, e), []).append(sq)
        seen_rb.setdefault((e2, f2), []).append(sq)
    for path in tg.blue_red_paths():
        n = len(seen_br.get(path, ()))
        if n != 1:
            rep.add(Violation("blue_red_bijective", path, n, 1, detail="squares starting at this blue-red path"))
    for path in tg.red_blue_paths():
        n = len(seen_rb.get(path, ()))
        if n != 1:
            rep.add(Violation("red_blue_bijective", path, n, 1, detail="squares ending at this red-blue path"))
    return rep


@dataclass
class CoalignmentReport:
    """Fill-in counts for every same-source (blue, red) pair."""

    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def one_coaligned(self) -> bool:
        return all(n == 1 for n in self.counts.values())

    def to_dict(self) -> dict:
        return {
            "status": "ok" if self.one_coaligned else "violations",
            "one_coaligned": self.one_coaligned,
            "pairs_checked": len(self.counts),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def coaligned_check(tg: TwoGraphPresentation) -> CoalignmentReport:
    """For each blue ``e1`` and red ``e2`` with ``s(e1) = s(e2)``, count ``(f1, f2)`` with ``f1 e2 = f2 e1``.

    ``f1`` is blue and ``f2`` red, so ``f1 e2`` is a blue-red path and the
    identity means a square ``(f1, e2, f2, e1)``.
    """
    by_br: dict = {}
    for f, e, e2, f2 in tg.squares:
        by_br.setdefault((e, f2), []).append((f, e2))
    rep = CoalignmentReport()
    for e1, (_, s1) in tg.blue.items():
        for e2, (_, s2) in tg.red.items():
            if s1 != s2:
                continue
            fills = by_br.get((e2, e1), [])
            rep.counts[(e1, e2)] = len(fills)
            if len(fills) != 1:
                kind = "no fill-in" if not fills else "multiple fill-ins"
                rep.witnesses.append(Violation("one_coaligned", (e1, e2), len(fills), 1, detail=kind))
    return rep


@dataclass
class HypothesesCertificate:
    """Combinatorial hypotheses for the blue/red blend theorem on a finite 2-graph."""

    valid: bool
    row_finite: bool
    no_sources: bool
    no_sinks: bool
    one_coaligned: bool
    witnesses: list = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.valid and self.row_finite and self.no_sources and self.no_sinks and self.one_coaligned

    def to_dict(self) -> dict:
        return {
            "status": "ok" if self.hypotheses_hold else "violations",
            "valid": self.valid,
            "row_finite": self.row_finite,
            "no_sources": self.no_sources,
            "no_sinks": self.no_sinks,
            "one_coaligned": self.one_coaligned,
            "hypotheses_hold": self.hypotheses_hold,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def hypotheses_certificate(tg: TwoGraphPresentation) -> HypothesesCertificate:
    """Row-finiteness is automatic here.

    "No sources" means every vertex receives a blue and a red edge, and "no
    sinks" that every vertex emits one of each; by factorisation these give
    paths of every degree into and out of each vertex.
    """
    validity = validate_two_graph(tg)
    coal = coaligned_check(tg)
    witnesses = list(validity.violations) + list(coal.witnesses)
    no_sources = no_sinks = True
    for v in tg.vertices:
        for colour, edges in (("blue", tg.blue), ("red", tg.red)):
            if not any(r == v for r, _ in edges.values()):
                no_sources = False
                witnesses.append(Violation("no_sources", (v,), colour, None, detail=f"receives no {colour} edge"))
            if not any(s == v for _, s in edges.values()):
                no_sinks = False
                witnesses.append(Violation("no_sinks", (v,), colour, None, detail=f"emits no {colour} edge"))
    return HypothesesCertificate(validity.ok, True, no_sources, no_sinks, coal.one_coaligned, witnesses)


def blue_red_graphs(tg: TwoGraphPresentation) -> tuple[nx.MultiDiGraph, nx.MultiDiGraph]:
    """The one-coloured graphs on the shared vertex set; edges point source to range."""
    out = []
    for edges in (tg.blue, tg.red):
        gr = nx.MultiDiGraph()
        gr.add_nodes_from(tg.vertices)
        for name, (r, s) in edges.items():
            gr.add_edge(s, r, key=name)
        out.append(gr)
    return out[0], out[1]


def two_graph(vertices: Sequence, blue: Mapping, red: Mapping, squares: Sequence) -> TwoGraphPresentation:
    """Build a presentation, raising unless it is a valid 2-graph."""
    tg = TwoGraphPresentation(tuple(vertices), blue, red, tuple(squares))
    rep = validate_two_graph(tg)
    if not rep.ok:
        raise PreconditionError(f"not a 2-graph: {rep.violations[0]}")
    return tg
