import numpy as np
import pytest

from zsgroupoid import fixtures as F
from zsgroupoid.constructions import (
    Cocycle,
    FiniteGroupAction,
    cyclic_group,
    pair_groupoid,
    semidirect_cocycle,
    semidirect_product,
    semidirect_skew_isomorphism_check,
    skew_matched_pair,
    skew_product,
    transformation_groupoid,
    unit_groupoid,
)
from zsgroupoid.errors import InvalidConstruction, PreconditionError
from zsgroupoid.groupoid import is_isomorphism, validate_groupoid
from zsgroupoid.zs import build_zs_product, check_derived_identities, verify_matched_pair

from .oracles import brute_isomorphic


def z2_on_two_points(swap: bool) -> FiniteGroupAction:
    act = {("e", "1"): "1", ("e", "2"): "2"}
    act.update({("a", "1"): "2", ("a", "2"): "1"} if swap else {("a", "1"): "1", ("a", "2"): "2"})
    return FiniteGroupAction(F.z2(), ("1", "2"), act)


def test_trivial_action_gives_two_copies_of_z2():
    g = transformation_groupoid(z2_on_two_points(swap=False))
    assert (len(g), len(g.units)) == (4, 2)
    assert validate_groupoid(g).ok
    assert all(g.range(x) == g.source(x) for x in g)


def test_swap_action_range_and_source():
    g = transformation_groupoid(z2_on_two_points(swap=True))
    assert (len(g), len(g.units)) == (4, 2)
    assert g.range(("a", "1")) == ("e", "2")
    assert g.source(("a", "1")) == ("e", "1")


def test_trivial_group_gives_unit_groupoid():
    act = FiniteGroupAction(cyclic_group(1), ("p", "q"), {("e", "p"): "p", ("e", "q"): "q"})
    g = transformation_groupoid(act)
    assert g.units == g.elements and len(g) == 2


def test_invalid_action_has_witness():
    act = z2_on_two_points(swap=True)
    bad = FiniteGroupAction(act.group, act.carrier, {**act.act, ("a", "2"): "2"})
    with pytest.raises(InvalidConstruction) as info:
        transformation_groupoid(bad)
    assert info.value.witness


def test_skew_fixture():
    g, c = F.skew_inputs()
    gc = skew_product(g, c)
    assert set(gc.elements) == {("e", "0"), ("e", "1"), ("a", "0"), ("a", "1")}
    assert set(gc.units) == {("e", "0"), ("e", "1")}
    # second coordinate must be 0 + c(a) = 1
    assert gc.compose(("a", "0"), ("a", "1")) == ("e", "0")
    assert gc.compose(("a", "0"), ("a", "0")) is None


def test_trivial_cocycle_gives_disjoint_copies():
    g = F.pair2()
    a = cyclic_group(3, labels=["0", "1", "2"])
    gc = skew_product(g, Cocycle(g, a, {x: "0" for x in g}))
    assert len(gc) == 12 and len(gc.units) == 6
    for x, alpha in gc:
        assert gc.range((x, alpha))[1] == alpha == gc.source((x, alpha))[1]


def test_pair2_skew_validates():
    g, c = F.pair2_skew_inputs()
    gc = skew_product(g, c)
    assert (len(gc), len(gc.units)) == (8, 4)
    assert validate_groupoid(gc).ok


def test_non_homomorphism_cocycle_rejected():
    g = F.z2()
    a = cyclic_group(3, labels=["0", "1", "2"])
    with pytest.raises(InvalidConstruction) as info:
        skew_product(g, Cocycle(g, a, {"e": "0", "a": "1"}))
    assert len(info.value.witness) == 2


def test_cocycle_domain_must_match():
    g, c = F.skew_inputs()
    with pytest.raises(PreconditionError):
        skew_product(F.z2(), c)


def test_skewmp_shapes():
    mp = F.skewmp()
    assert len(mp.g) == 4 and len(mp.h) == 4
    assert verify_matched_pair(mp).ok and check_derived_identities(mp).ok
    assert len(build_zs_product(mp).product) == 8


def test_trivial_group_skew_pair_is_g():
    g = F.pair2()
    a = cyclic_group(1, labels=["0"])
    mp = skew_matched_pair(g, Cocycle(g, a, {x: "0" for x in g}))
    assert all(mp.h.is_unit(y) for y in mp.h)
    assert brute_isomorphic(build_zs_product(mp).product, skew_product(g, Cocycle(g, a, {x: "0" for x in g})))


def test_pair2_skew_pair_verifies():
    assert verify_matched_pair(skew_matched_pair(*F.pair2_skew_inputs())).ok


def test_semidirect_inverse_is_two_sided():
    g, c = F.pair2_skew_inputs()
    sd = semidirect_product(g, c)
    assert validate_groupoid(sd).ok
    for x in sd:
        assert sd.compose(x, sd.inverse(x)) == sd.range(x)


def test_semidirect_cocycle_is_homomorphism():
    g, c = F.skew_inputs()
    sd = semidirect_product(g, c)
    semidirect_cocycle(sd, c).check()


@pytest.mark.parametrize("inputs", [F.skew_inputs, F.pair2_skew_inputs])
def test_semidirect_skew_isomorphism(inputs):
    g, c = inputs()
    rep = semidirect_skew_isomorphism_check(g, c)
    assert rep.ok, rep.detail
    assert list(rep.stages.values()) == ["ok"] * 6
    assert rep.elements == len(g) * len(c.target) ** 2


def test_trivial_a_isomorphism():
    g = F.pair2()
    a = cyclic_group(1, labels=["0"])
    rep = semidirect_skew_isomorphism_check(g, Cocycle(g, a, {x: "0" for x in g}))
    assert rep.ok and rep.elements == len(g)


def test_literal_map_fails_on_skew():
    # the unswapped assignment ((x,a),b) -> ((x,a),(b,(s(x), a c(x) b))) is not a homomorphism
    g, c = F.skew_inputs()
    A = c.target
    sd = semidirect_product(g, c)
    skew_sd = skew_product(sd, semidirect_cocycle(sd, c))
    prod = build_zs_product(skew_matched_pair(g, c)).product
    literal = {
        ((x, a), b): ((x, a), (b, (g.source(x), A.compose(A.compose(a, c(x)), b))))
        for (x, a), b in skew_sd
    }
    assert set(literal.values()) <= set(prod.elements)
    assert not is_isomorphism(skew_sd, prod, literal)


def test_random_skew_inputs_are_valid():
    rng = np.random.default_rng(11)
    for _ in range(5):
        g, c = F.random_skew_inputs(rng)
        c.check()
        gc = skew_product(g, c)
        assert validate_groupoid(gc).ok
        assert len(gc.units) == len(g.units) * len(c.target)
        assert verify_matched_pair(skew_matched_pair(g, c)).ok


def test_unit_groupoid_validates():
    assert validate_groupoid(unit_groupoid(["x", "y"])).ok
    assert validate_groupoid(pair_groupoid(["x", "y", "z"])).ok
