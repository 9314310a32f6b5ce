"""Named fixture corpus, deliberate corruptions and seeded random generators.

Everything here is deterministic: the random generators take an explicit
``numpy.random.Generator`` and the corpus uses fixed seeds.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

import numpy as np

from .constructions import (
    Cocycle,
    FiniteGroupAction,
    cyclic_group,
    direct_product,
    disjoint_union,
    pair_groupoid,
    s3,
    skew_matched_pair,
    symmetric_group,
    transformation_groupoid,
    unit_groupoid,
)
from .dynamics import EndoPair
from .groupoid import FiniteGroupoid
from .kgraph import TwoGraphPresentation
from .report import label
from .zs import MatchedPair, internal_decompose, trivial_matched_pair

CORPUS_SEED = 20240611


# -- small groups and groupoids -------------------------------------------------


def z2() -> FiniteGroupoid:
    return cyclic_group(2)


def z3() -> FiniteGroupoid:
    return cyclic_group(3)


def z4() -> FiniteGroupoid:
    return cyclic_group(4, labels=list("0123"))


def z6() -> FiniteGroupoid:
    return cyclic_group(6)


def klein() -> FiniteGroupoid:
    return direct_product(cyclic_group(2), cyclic_group(2), name="V4").relabel(
        {("e", "e"): "e", ("a", "e"): "x", ("e", "a"): "y", ("a", "a"): "xy"}
    )


def pair2() -> FiniteGroupoid:
    return pair_groupoid(["1", "2"], name="PAIR2")


def trivial() -> FiniteGroupoid:
    return unit_groupoid(["u"], name="TRIVIAL")


def named_groupoids() -> dict[str, FiniteGroupoid]:
    return {
        "z2": z2(),
        "z3": z3(),
        "z4": z4(),
        "z6": z6(),
        "v4": klein(),
        "s3": s3(),
        "pair2": pair2(),
        "trivial": trivial(),
        "swap_action": transformation_groupoid(
            FiniteGroupAction(z2(), ("1", "2"), {("e", "1"): "1", ("e", "2"): "2", ("a", "1"): "2", ("a", "2"): "1"}),
            name="Z2 x| {1,2}",
        ),
    }


# -- corrupted groupoids, one per axiom -------------------------------------------


def corrupted_groupoids() -> dict[str, FiniteGroupoid]:
    """Each entry is rejected with a witness for the axiom named by its key."""
    g = z3()
    table = dict(g.compose_table)
    # a2 a2 := a2 makes (a2 a2) a = a2 a = e but a2 (a2 a) = a2 e = a2
    table[("a2", "a2")] = "a2"
    bad_assoc = FiniteGroupoid(g.elements, table, g.inverse_table, name="Z3 bad assoc")

    g = z2()
    bad_inv = FiniteGroupoid(g.elements, g.compose_table, {"e": "e", "a": "e"}, name="Z2 bad inverse")

    table = {k: v for k, v in g.compose_table.items() if k != ("a", "a")}
    bad_cancel = FiniteGroupoid(g.elements, table, g.inverse_table, name="Z2 missing a a")
    return {"associativity": bad_assoc, "involutivity": bad_inv, "cancellation": bad_cancel}


# -- matched pairs --------------------------------------------------------------


def direct() -> MatchedPair:
    """``Z2 x Z3`` with trivial action and restriction."""
    return trivial_matched_pair(z2(), z3(), name="DIRECT")


def skew_inputs() -> tuple[FiniteGroupoid, Cocycle]:
    """``G = Z2``, ``A = Z2`` (labels ``0``, ``1``), ``c`` the identity map."""
    g = z2()
    a = cyclic_group(2, labels=["0", "1"], name="A")
    return g, Cocycle(g, a, {"e": "0", "a": "1"})


def pair2_skew_inputs() -> tuple[FiniteGroupoid, Cocycle]:
    """PAIR2 with ``c(1,2) = c(2,1) = 1`` in ``Z2``."""
    g = pair2()
    a = cyclic_group(2, labels=["0", "1"], name="A")
    cmap = {("1", "1"): "0", ("2", "2"): "0", ("1", "2"): "1", ("2", "1"): "1"}
    return g, Cocycle(g, a, cmap)


def skewmp() -> MatchedPair:
    mp = skew_matched_pair(*skew_inputs())
    return MatchedPair(mp.g, mp.h, mp.unit_map, mp.action, mp.restriction, name="SKEWMP")


def s3_decomposition() -> tuple[FiniteGroupoid, tuple, tuple]:
    """``S3 = A3 {e, s}``."""
    return s3(), ("e", "r", "r2"), ("e", "s")


def s4_decomposition() -> tuple[FiniteGroupoid, tuple, tuple]:
    """``S4 = S3 C4``: the stabiliser of 3 times the cyclic group of a 4-cycle."""
    g = symmetric_group(4)
    stab = tuple(x for x in g if x[3] == "3")
    cyc = ("0123", "1230", "2301", "3012")
    return g, stab, cyc


def _extract(k, gsub, hsub, name):
    dec = internal_decompose(k, gsub, hsub)
    if not dec.found:
        raise AssertionError(f"{name} fixture failed to decompose")  # pragma: no cover
    mp = dec.pair
    return MatchedPair(mp.g, mp.h, mp.unit_map, mp.action, mp.restriction, name=name)


def s3mp() -> MatchedPair:
    return _extract(*s3_decomposition(), "S3MP")


def s4mp() -> MatchedPair:
    return _extract(*s4_decomposition(), "S4MP")


def pair_times_group_decomposition(points, group: FiniteGroupoid, gsub_group, hsub_group):
    """``Pair(points) x group`` split as ``Pair x G1`` times the diagonal ``x G2``."""
    k = direct_product(pair_groupoid(points), group)
    gsub = [(p, x) for p in pair_groupoid(points) for x in gsub_group]
    hsub = [((i, i), y) for i in points for y in hsub_group]
    return k, gsub, hsub


def named_matched_pairs() -> dict[str, MatchedPair]:
    """The deterministic part of the matched-pair corpus."""
    pg = _extract(*pair_times_group_decomposition(["1", "2"], z6(), ("e", "a3"), ("e", "a2", "a4")), "PAIR2xZ6")
    return {
        "direct": direct(),
        "trivz2": trivial_matched_pair(trivial(), z2(), name="TRIVZ2"),
        "skewmp": skewmp(),
        "pair2_skewmp": _renamed(skew_matched_pair(*pair2_skew_inputs()), "PAIR2SKEWMP"),
        "s3mp": s3mp(),
        "s4mp": s4mp(),
        "pair2xz6": pg,
    }


def _renamed(mp: MatchedPair, name: str) -> MatchedPair:
    return MatchedPair(mp.g, mp.h, mp.unit_map, mp.action, mp.restriction, name=name)


# -- matched-pair mutations, one per axiom ----------------------------------------


def _mutate(mp: MatchedPair, name, action=None, restriction=None) -> MatchedPair:
    act = dict(mp.action)
    res = dict(mp.restriction)
    act.update(action or {})
    res.update(restriction or {})
    return MatchedPair(mp.g, mp.h, mp.unit_map, act, res, name=name)


def _replace_action(mp: MatchedPair, same_b: bool, same_t: bool):
    """First fibre entry whose action value can move to a different element with the stated endpoints."""
    for key in mp.fibre():
        old = mp.action[key]
        for x in mp.g:
            if x == old:
                continue
            if (mp.b(x) == mp.b(old)) == same_b and (mp.t(x) == mp.t(old)) == same_t:
                return {key: x}
    raise AssertionError("no suitable replacement")  # pragma: no cover


def _replace_restriction(mp: MatchedPair):
    for key in mp.fibre():
        old = mp.restriction[key]
        for y in mp.h:
            if mp.r(y) != mp.r(old) and mp.l(y) == mp.l(old):
                return {key: y}
    raise AssertionError("no suitable replacement")  # pragma: no cover


def zs_mutations() -> dict[str, MatchedPair]:
    """Matched-pair tables, each with one entry changed so the keyed axiom fails."""
    d, sk = direct(), skewmp()
    return {
        # a.(a) := e; then (a a2).a = a but a.(a2.a) = e
        "ZS1": _mutate(d, "ZS1 mutation", action={("a", "a"): "e"}),
        # a.e := a; then a.(e e) = a but (a.e)(a|e . e) = e
        "ZS2": _mutate(d, "ZS2 mutation", action={("a", "e"): "a"}),
        # a|a := a2; then a|(a a) = a but (a|a)|a = a2
        "ZS3": _mutate(d, "ZS3 mutation", restriction={("a", "a"): "a2"}),
        # a2|a := e; then (a a)|a = e but (a|a)(a|a) = a2
        "ZS4": _mutate(d, "ZS4 mutation", restriction={("a2", "a"): "e"}),
        "ZS5": _mutate(sk, "ZS5 mutation", action=_replace_action(sk, same_b=False, same_t=True)),
        "ZS6": _mutate(sk, "ZS6 mutation", restriction=_replace_restriction(sk)),
        "ZS7": _mutate(sk, "ZS7 mutation", action=_replace_action(sk, same_b=True, same_t=False)),
        # unit e of Z3 moves a
        "ZS8": _mutate(d, "ZS8 mutation", action={("e", "a"): "e"}),
        # a|e := e
        "ZS9": _mutate(d, "ZS9 mutation", restriction={("a", "e"): "e"}),
    }


# -- dynamics and 2-graphs ------------------------------------------------------


def rot4() -> EndoPair:
    """``Z/4`` with ``S = +1`` and ``T = +2``."""
    pts = ("0", "1", "2", "3")
    return EndoPair(pts, {p: str((int(p) + 1) % 4) for p in pts}, {p: str((int(p) + 2) % 4) for p in pts})


def idswap() -> EndoPair:
    return EndoPair(("0", "1"), {"0": "0", "1": "1"}, {"0": "1", "1": "0"})


def identity_pair(n: int = 3) -> EndoPair:
    pts = tuple(str(i) for i in range(n))
    ident = {p: p for p in pts}
    return EndoPair(pts, ident, ident)


def named_endo_pairs() -> dict[str, EndoPair]:
    return {"rot4": rot4(), "idswap": idswap(), "identity3": identity_pair(3)}


def kg1() -> TwoGraphPresentation:
    """One vertex, one blue loop ``f``, one red loop ``e``, square ``f e = e f``."""
    return TwoGraphPresentation(("v",), {"f": ("v", "v")}, {"e": ("v", "v")}, (("f", "e", "e", "f"),))


def noncoaligned() -> TwoGraphPresentation:
    """Blue ``f`` and red ``e`` both ``u <- v``: no composable paths, no fill-in for ``(f, e)``."""
    return TwoGraphPresentation(("u", "v"), {"f": ("u", "v")}, {"e": ("u", "v")}, ())


def multifill() -> TwoGraphPresentation:
    """One vertex, two loops of each colour; ``(f1, e1)`` admits two fill-ins."""
    v = ("v", "v")
    squares = (
        ("f1", "e1", "e1", "f1"),
        ("f2", "e1", "e2", "f1"),
        ("f1", "e2", "e1", "f2"),
        ("f2", "e2", "e2", "f2"),
    )
    return TwoGraphPresentation(("v",), {"f1": v, "f2": v}, {"e1": v, "e2": v}, squares)


def comm2() -> TwoGraphPresentation:
    """One vertex, two loops of each colour, commuting squares ``fi ej = ej fi``: 1-coaligned."""
    v = ("v", "v")
    squares = tuple((f"f{i}", f"e{j}", f"e{j}", f"f{i}") for i in (1, 2) for j in (1, 2))
    return TwoGraphPresentation(("v",), {"f1": v, "f2": v}, {"e1": v, "e2": v}, squares)


def named_two_graphs() -> dict[str, TwoGraphPresentation]:
    return {"kg1": kg1(), "comm2": comm2(), "noncoaligned": noncoaligned(), "multifill": multifill()}


# -- random generators -----------------------------------------------------------

_SMALL_GROUPS = (
    lambda: cyclic_group(1),
    z2,
    z3,
    lambda: cyclic_group(4),
    klein,
    lambda: cyclic_group(5),
    s3,
)


def _shuffled(g: FiniteGroupoid, rng: np.random.Generator, name: str) -> FiniteGroupoid:
    """Relabel to strings and permute the element order."""
    relabelled = g.relabel({x: label(x) for x in g})
    order = [relabelled.elements[i] for i in rng.permutation(len(relabelled))]
    return FiniteGroupoid(order, relabelled.compose_table, relabelled.inverse_table, name=name)


def _random_action_groupoid(rng: np.random.Generator, budget: int):
    """``Z_o`` acting on a few points through a random permutation of order ``o``."""
    n = int(rng.integers(1, 5))
    perm = [int(i) for i in rng.permutation(n)]
    order, p = 1, perm
    while p != list(range(n)):
        p = [perm[i] for i in p]
        order += 1
    if order * n > budget:
        return None
    grp = cyclic_group(order)
    pts = tuple(f"p{i}" for i in range(n))

    def power(k, i):
        for _ in range(k):
            i = perm[i]
        return i

    act = {(x, pts[i]): pts[power(k, i)] for k, x in enumerate(grp) for i in range(n)}
    return transformation_groupoid(FiniteGroupAction(grp, pts, act))


def random_groupoid(rng: np.random.Generator, max_elements: int = 40, name: str | None = None) -> FiniteGroupoid:
    """A disjoint union of transitive pieces ``Pair(n) x G`` and transformation groupoids."""
    parts, total = [], 0
    for _ in range(int(rng.integers(1, 4))):
        budget = max_elements - total
        if budget <= 0:
            break
        if rng.random() < 0.3:
            part = _random_action_groupoid(rng, budget)
        else:
            grp = _SMALL_GROUPS[int(rng.integers(len(_SMALL_GROUPS)))]()
            n = int(rng.integers(1, 4))
            part = None
            if n * n * len(grp) <= budget:
                part = direct_product(pair_groupoid([f"q{i}" for i in range(n)]), grp)
        if part is not None:
            parts.append(part)
            total += len(part)
    if not parts:
        parts = [cyclic_group(2)]
    return _shuffled(disjoint_union(parts), rng, name or "random")


def group_homomorphisms(a: FiniteGroupoid, b: FiniteGroupoid) -> list[dict]:
    """All homomorphisms between two small groups, by brute force over maps."""
    e_a, e_b = a.units[0], b.units[0]
    others = [x for x in a if x != e_a]
    found = []
    for images in itertools.product(b.elements, repeat=len(others)):
        phi = {e_a: e_b, **dict(zip(others, images))}
        if all(phi[a.compose(x, y)] == b.compose(phi[x], phi[y]) for x, y in a.composable_pairs):
            found.append(phi)
    return found


def random_skew_inputs(rng: np.random.Generator, max_elements: int = 12) -> tuple[FiniteGroupoid, Cocycle]:
    """``Pair(n) x G`` with a cocycle ``c((i, j), x) = phi(i) psi(x) phi(j)^-1``."""
    target = [cyclic_group(2, labels=["0", "1"], name="A"), cyclic_group(3, labels=["0", "1", "2"], name="A")][
        int(rng.integers(2))
    ]
    while True:
        grp = _SMALL_GROUPS[int(rng.integers(len(_SMALL_GROUPS)))]()
        n = int(rng.integers(1, 3))
        if n * n * len(grp) <= max_elements:
            break
    pts = [f"q{i}" for i in range(n)]
    base = direct_product(pair_groupoid(pts), grp)
    homs = group_homomorphisms(grp, target)
    psi = homs[int(rng.integers(len(homs)))]
    phi = {p: target.elements[int(rng.integers(len(target)))] for p in pts}
    A = target
    cmap = {
        ((i, j), x): A.compose(A.compose(phi[i], psi[x]), A.inverse(phi[j]))
        for (i, j), x in base.elements
    }
    relabel = {x: label(x) for x in base}
    g = base.relabel(relabel, name=f"Pair{n}x{grp.name}")
    return g, Cocycle(g, A, {relabel[x]: v for x, v in cmap.items()})


def random_matched_pairs(seed: int = CORPUS_SEED, count: int = 4) -> dict[str, MatchedPair]:
    rng = np.random.default_rng(seed)
    out = {}
    for k in range(count):
        g, c = random_skew_inputs(rng)
        out[f"random_skew_{k}"] = _renamed(skew_matched_pair(g, c), f"random skew {k}")
    return out


def random_groupoid_corpus(seed: int = CORPUS_SEED, count: int = 24) -> dict[str, FiniteGroupoid]:
    rng = np.random.default_rng(seed)
    return {f"random_{k:02d}": random_groupoid(rng, name=f"random {k}") for k in range(count)}


def corpus_matched_pairs() -> dict[str, MatchedPair]:
    return {**named_matched_pairs(), **random_matched_pairs()}


def corpus_groupoids() -> dict[str, FiniteGroupoid]:
    return {**named_groupoids(), **random_groupoid_corpus()}


def random_slice(g: FiniteGroupoid, rng: np.random.Generator) -> list:
    """A random non-empty bisection, grown greedily from a shuffled element order."""
    ranges, sources, chosen = set(), set(), []
    for i in rng.permutation(len(g)):
        x = g.elements[i]
        r, s = g.range(x), g.source(x)
        if r not in ranges and s not in sources:
            ranges.add(r)
            sources.add(s)
            chosen.append(x)
    keep = int(rng.integers(1, len(chosen) + 1))
    return [g.elements[i] for i in sorted(g.index(x) for x in chosen[:keep])]


def random_non_slice(g: FiniteGroupoid, rng: np.random.Generator) -> list | None:
    """A support with two elements sharing a range, or ``None`` if every range fibre is a singleton."""
    crowded = [u for u in g.units if len(g.range_fibre(u)) > 1]
    if not crowded:
        return None
    u = crowded[int(rng.integers(len(crowded)))]
    fibre = g.range_fibre(u)
    i, j = rng.choice(len(fibre), size=2, replace=False)
    extra = [x for x in g if rng.random() < 0.3]
    picked = {fibre[int(i)], fibre[int(j)], *extra}
    return [x for x in g if x in picked]


# -- writing the corpus to disk ----------------------------------------------------


def _dump(path: Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def write_fixtures(root) -> list[Path]:
    """Write every fixture as a JSON file under ``root``; returns the paths written."""
    root = Path(root)
    written = []

    def put(rel, doc):
        p = root / rel
        _dump(p, doc)
        written.append(p)

    for name, g in named_groupoids().items():
        put(f"groupoids/{name}.json", g.to_dict())
    for name, g in random_groupoid_corpus().items():
        put(f"groupoids/{name}.json", g.to_dict())
    for name, g in corrupted_groupoids().items():
        put(f"corrupted/{name}.json", g.to_dict())
    for name, mp in corpus_matched_pairs().items():
        put(f"matched_pairs/{name}.json", mp.to_dict())
    for name, mp in zs_mutations().items():
        put(f"mutations/{name.lower()}.json", mp.to_dict())
    for name, (g, c) in {"skew": skew_inputs(), "pair2_skew": pair2_skew_inputs()}.items():
        put(f"cocycles/{name}.json", c.to_dict())
    for name, pair in named_endo_pairs().items():
        put(f"endo/{name}.json", pair.to_dict())
    for name, tg in named_two_graphs().items():
        put(f"kgraphs/{name}.json", tg.to_dict())
    for name, (k, gsub, hsub) in {"s3": s3_decomposition(), "s4": s4_decomposition()}.items():
        put(f"decompositions/{name}.json", k.to_dict())
        put(f"decompositions/{name}_gsub.json", [label(x) for x in gsub])
        put(f"decompositions/{name}_hsub.json", [label(x) for x in hsub])
    put("functions/pair2_delta12.json", {"groupoid": pair2().to_dict(), "coeffs": {"(1,2)": [1.0, 0.0]}})
    put("functions/s3_mixed.json", {
        "groupoid": s3().to_dict(),
        "coeffs": {"e": [1.0, 0.0], "r": [0.0, 2.0], "s": [-0.5, 0.25]},
    })
    return written
