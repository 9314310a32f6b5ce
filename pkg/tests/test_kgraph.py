import pytest

from zsgroupoid import fixtures as F
from zsgroupoid.errors import PreconditionError
from zsgroupoid.kgraph import (
    TwoGraphPresentation,
    blue_red_graphs,
    coaligned_check,
    hypotheses_certificate,
    two_graph,
    validate_two_graph,
)


def brute_fill_ins(tg, e1, e2):
    """Blue f1, red f2 with r(f1) = r(f2) and a square saying f1 e2 = f2 e1."""
    squares = set(tg.squares)
    return [
        (f1, f2)
        for f1, (r1, _) in tg.blue.items()
        for f2, (r2, _) in tg.red.items()
        if r1 == r2 and (f1, e2, f2, e1) in squares
    ]


def test_kg1_is_valid_and_coaligned():
    tg = F.kg1()
    assert validate_two_graph(tg).ok
    rep = coaligned_check(tg)
    assert rep.one_coaligned and rep.counts == {("f", "e"): 1}
    assert hypotheses_certificate(tg).hypotheses_hold


def test_kg1_graphs_are_single_loops():
    blue, red = blue_red_graphs(F.kg1())
    assert list(blue.nodes) == ["v"] and list(blue.edges(keys=True)) == [("v", "v", "f")]
    assert list(red.nodes) == ["v"] and list(red.edges(keys=True)) == [("v", "v", "e")]


def test_noncoaligned_has_zero_fill_in():
    tg = F.noncoaligned()
    assert validate_two_graph(tg).ok
    rep = coaligned_check(tg)
    assert not rep.one_coaligned
    assert [(w.witness, w.lhs) for w in rep.witnesses] == [(("f", "e"), 0)]


def test_multifill_has_two_fill_ins():
    tg = F.multifill()
    assert validate_two_graph(tg).ok
    rep = coaligned_check(tg)
    assert rep.counts[("f1", "e1")] == 2
    assert any(w.lhs == 2 and w.detail == "multiple fill-ins" for w in rep.witnesses)


@pytest.mark.parametrize("name", ["kg1", "comm2", "noncoaligned", "multifill"])
def test_counts_match_brute_force(name):
    tg = F.named_two_graphs()[name]
    rep = coaligned_check(tg)
    for (e1, e2), n in rep.counts.items():
        assert n == len(brute_fill_ins(tg, e1, e2))


def test_comm2_certificate():
    cert = hypotheses_certificate(F.comm2())
    assert cert.hypotheses_hold and not cert.witnesses


def test_missing_square_breaks_bijection():
    tg = F.kg1()
    bad = TwoGraphPresentation(tg.vertices, tg.blue, tg.red, ())
    rep = validate_two_graph(bad)
    assert not rep.ok
    assert rep.violated_rules() == {"blue_red_bijective", "red_blue_bijective"}


def test_square_endpoints_checked():
    tg = TwoGraphPresentation(
        ("u", "v"),
        {"f": ("u", "u"), "g": ("v", "v")},
        {"e": ("u", "u"), "d": ("v", "v")},
        (("f", "e", "d", "g"), ("g", "d", "e", "f")),
    )
    rep = validate_two_graph(tg)
    assert "square_endpoints" in rep.violated_rules()


def test_unknown_vertex_and_two_graph_constructor():
    bad = TwoGraphPresentation(("v",), {"f": ("v", "w")}, {}, ())
    assert "edges" in validate_two_graph(bad).violated_rules()
    with pytest.raises(PreconditionError):
        two_graph(("v",), {"f": ("v", "v")}, {"e": ("v", "v")}, ())


def test_source_and_sink_detection():
    tg = F.noncoaligned()
    cert = hypotheses_certificate(tg)
    assert not cert.no_sources and not cert.no_sinks


def test_round_trip():
    for tg in F.named_two_graphs().values():
        back = TwoGraphPresentation.from_dict(tg.to_dict())
        assert back.to_dict() == tg.to_dict()
