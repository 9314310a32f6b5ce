import itertools

import pytest

from zsgroupoid import fixtures as F
from zsgroupoid.dynamics import (
    EndoPair,
    WindowedDR,
    dr_window,
    dr_zs_decomposition_check,
    iterate,
    star_commuting_check,
)
from zsgroupoid.errors import InvalidConstruction, PreconditionError


def brute_window(carrier, theta, exps, lag):
    """Every (x, lag(m, n), y) with theta(m, x) == theta(n, y), no deduplication tricks."""
    return {
        (x, lag(m, n), y)
        for m in exps
        for n in exps
        for x in carrier
        for y in carrier
        if theta(m, x) == theta(n, y)
    }


@pytest.mark.parametrize("pair", [F.rot4(), F.idswap(), F.identity_pair(3)])
def test_star_commuting_fixtures(pair):
    rep = star_commuting_check(pair)
    assert rep.commute and rep.star_commute and not rep.witnesses


def test_idswap_unique_z_is_x():
    p = F.idswap()
    for x in p.carrier:
        for y in p.carrier:
            if p.t_map[x] == p.s_map[y]:
                zs = [z for z in p.carrier if p.s_map[z] == x and p.t_map[z] == y]
                assert zs == [x]


def test_non_commuting_pair_reports_witness():
    pts = ("0", "1", "2")
    s = {"0": "1", "1": "0", "2": "2"}
    t = {"0": "0", "1": "2", "2": "1"}
    rep = star_commuting_check(EndoPair(pts, s, t))
    assert not rep.commute and not rep.star_commute
    assert any(w.rule == "commute" for w in rep.witnesses)


def test_non_surjective_is_precondition_error():
    p = EndoPair(("0", "1"), {"0": "0", "1": "0"}, {"0": "0", "1": "1"})
    with pytest.raises(InvalidConstruction):
        star_commuting_check(p)
    with pytest.raises(PreconditionError):
        dr_window({"0": "0", "1": "0"}, 1)


def test_window_matches_brute_force_single_map():
    s = F.rot4().s_map
    for K in range(4):
        w = dr_window(s, K)
        exps = range(K + 1)
        assert set(w.elements) == brute_window(tuple(s), lambda m, x: iterate(s, x, m), exps, lambda m, n: m - n)
        assert len(w.elements) == len(set(w.elements))


def test_window_matches_brute_force_pair():
    p = F.idswap()
    for K in range(3):
        w = dr_window(p, K)
        exps = list(itertools.product(range(K + 1), repeat=2))

        def theta(m, x):
            return iterate(p.s_map, iterate(p.t_map, x, m[1]), m[0])

        expected = brute_window(p.carrier, theta, exps, lambda m, n: (m[0] - n[0], m[1] - n[1]))
        assert set(w.elements) == expected


def test_window_exponents_realise_their_lag():
    p = F.rot4()
    w = dr_window(p, 2)
    for el in w.elements:
        x, (k1, k2), y = el
        (m1, m2), (n1, n2) = w.exponents[el]
        assert (m1 - n1, m2 - n2) == (k1, k2)
        lhs = iterate(p.s_map, iterate(p.t_map, x, m2), m1)
        rhs = iterate(p.s_map, iterate(p.t_map, y, n2), n1)
        assert lhs == rhs
        assert max(m1, m2, n1, n2) <= 2


def test_window_exponents_are_minimal():
    s = F.rot4().s_map
    w = dr_window(s, 3)
    for el in w.elements:
        m, n = w.exponents[el]
        x, k, y = el
        for m2 in range(4):
            for n2 in range(4):
                if m2 - n2 == k and iterate(s, x, m2) == iterate(s, y, n2):
                    assert m + n <= m2 + n2


def test_identity_maps_window_every_lag():
    p = F.identity_pair(3)
    w = dr_window(p, 1)
    assert len(w) == 3 * 9
    assert all(x == y for x, _, y in w.elements)


def test_window_compose_and_inverse():
    a = ("0", (1, 0), "1")
    b = ("1", (0, 2), "3")
    assert WindowedDR.compose(a, b) == ("0", (1, 2), "3")
    assert WindowedDR.compose(b, a) is None
    assert WindowedDR.inverse(a) == ("1", (-1, 0), "0")
    w = dr_window(F.rot4().s_map, 1)
    el = w.elements[0]
    assert w.product(el, WindowedDR.inverse(el)) in w


@pytest.mark.parametrize("pair", [F.rot4(), F.idswap(), F.identity_pair(3)])
@pytest.mark.parametrize("K", [0, 1, 2, 3])
def test_decomposition_is_unique_everywhere(pair, K):
    rep = dr_zs_decomposition_check(pair, K)
    assert rep.ok
    assert rep.unique_fill_in == rep.total == len(dr_window(pair, K))
    assert rep.recomposed == rep.total - rep.skipped


def test_decomposition_refuses_non_star_commuting():
    pts = ("0", "1", "2")
    p = EndoPair(pts, {"0": "1", "1": "0", "2": "2"}, {"0": "0", "1": "2", "2": "1"})
    with pytest.raises(PreconditionError):
        dr_zs_decomposition_check(p, 1)


def test_negative_lag_rejected():
    with pytest.raises(PreconditionError):
        dr_window(F.rot4(), -1)


def test_endo_round_trip():
    p = F.rot4()
    back = EndoPair.from_dict(p.to_dict())
    assert back.s_map == p.s_map and back.t_map == p.t_map and back.carrier == p.carrier
