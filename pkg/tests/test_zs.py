import pytest

from zsgroupoid import fixtures as F
from zsgroupoid.constructions import cyclic_group, unit_groupoid
from zsgroupoid.errors import DomainError, PreconditionError, VerificationFailed
from zsgroupoid.groupoid import find_isomorphism, validate_groupoid
from zsgroupoid.zs import (
    ZS_AXIOMS,
    MatchedPair,
    build_zs_product,
    check_derived_identities,
    internal_decompose,
    reverse_decomposition,
    trivial_matched_pair,
    verify_matched_pair,
)

from .oracles import brute_isomorphic, zs_product_elements


@pytest.mark.parametrize("name", ["direct", "skewmp", "s3mp", "s4mp", "pair2_skewmp"])
def test_corpus_pairs_verify(name):
    mp = F.named_matched_pairs()[name]
    rep = verify_matched_pair(mp)
    assert rep.ok, rep.violations[:3]
    assert all(rep.checked[a] > 0 for a in ZS_AXIOMS)
    assert check_derived_identities(mp).ok


def test_zs9_mutation_witness():
    rep = verify_matched_pair(F.zs_mutations()["ZS9"])
    zs9 = [v for v in rep.violations if v.rule == "ZS9"]
    assert [v.witness for v in zs9] == [("a",)]


@pytest.mark.parametrize("axiom", ZS_AXIOMS)
def test_every_axiom_has_a_detected_mutation(axiom):
    rep = verify_matched_pair(F.zs_mutations()[axiom])
    assert axiom in rep.violated_rules()


def test_tables_off_the_fibre_are_rejected():
    d = F.direct()
    act = dict(d.action)
    del act[("a", "a")]
    with pytest.raises(DomainError) as info:
        verify_matched_pair(MatchedPair(d.g, d.h, d.unit_map, act, d.restriction))
    assert info.value.offending


def test_unit_map_must_be_bijective():
    d = F.direct()
    with pytest.raises(PreconditionError):
        verify_matched_pair(MatchedPair(d.g, d.h, {}, d.action, d.restriction))


def test_product_sizes_match_definition():
    for name, mp in F.named_matched_pairs().items():
        zs = build_zs_product(mp)
        assert set(zs.product.elements) == set(zs_product_elements(mp)), name
        assert validate_groupoid(zs.product).ok
        assert len(zs.product.units) == len(mp.unit_map)


def test_direct_product_z6_and_trivial_factor():
    prod = build_zs_product(F.direct()).product
    assert len(prod) == 6
    assert brute_isomorphic(prod, F.z6())
    mp = trivial_matched_pair(unit_groupoid(["u"]), F.z2())
    assert brute_isomorphic(build_zs_product(mp).product, F.z2())


def test_skewmp_product_shape():
    prod = build_zs_product(F.skewmp()).product
    assert (len(prod), len(prod.units)) == (8, 2)


def test_build_refuses_unverified():
    with pytest.raises(VerificationFailed):
        build_zs_product(F.zs_mutations()["ZS1"])


def test_product_composition_rule():
    mp = F.skewmp()
    prod = build_zs_product(mp).product
    g, h = mp.g, mp.h
    for (x1, y1), (x2, y2) in prod.composable_pairs:
        expected = (g.compose(x1, mp.act(y1, x2)), h.compose(mp.res(y1, x2), y2))
        assert prod.compose((x1, y1), (x2, y2)) == expected


def test_s3_decomposition():
    k, gsub, hsub = F.s3_decomposition()
    dec = internal_decompose(k, gsub, hsub)
    assert dec.found
    assert brute_isomorphic(dec.zs.product, k)
    assert find_isomorphism(dec.zs.product, k) is not None


def test_z2_trivially_decomposes():
    dec = internal_decompose(F.z2(), {"e"}, {"e", "a"})
    assert dec.found
    assert brute_isomorphic(dec.zs.product, F.z2())


def test_z4_does_not_decompose_over_its_z2():
    dec = internal_decompose(F.z4(), {"0", "2"}, {"0", "2"})
    assert not dec.found
    # gsub * hsub = {0, 2}: even elements factor twice, odd ones not at all
    counts = {z: len(fs) for z, fs in dec.witnesses}
    assert counts == {"0": 2, "1": 0, "2": 2, "3": 0}


def test_decompose_requires_subgroupoids():
    with pytest.raises(PreconditionError):
        internal_decompose(F.s3(), {"r"}, {"e", "s"})


def test_round_trip_through_product():
    for name, mp in F.corpus_matched_pairs().items():
        zs = build_zs_product(mp)
        dec = internal_decompose(zs.product, zs.g_image, zs.h_image)
        assert dec.found, name


def test_reverse_factorization_direct():
    zs = build_zs_product(F.direct())
    for x, y in zs.product:
        rf = reverse_decomposition(zs, (x, y))
        assert rf.left == ("e", y)
        assert rf.right == (x, "e")
        assert rf.unique


def test_reverse_factorization_skewmp_all_unique():
    zs = build_zs_product(F.skewmp())
    assert all(reverse_decomposition(zs, el).unique for el in zs.product)


def test_reverse_factorization_sr_in_s3():
    k, gsub, hsub = F.s3_decomposition()
    dec = internal_decompose(k, gsub, hsub)
    zs, iso = dec.zs, dec.isomorphism
    back = {v: e for e, v in iso.items()}
    rf = reverse_decomposition(zs, back["sr"])
    h_part, g_part = rf.left[1], rf.right[0]
    assert h_part in {"e", "s"} and g_part in {"e", "r", "r2"}
    assert k.compose(h_part, g_part) == "sr"
    assert rf.unique


def test_matched_pair_file_round_trip():
    for mp in F.named_matched_pairs().values():
        doc = mp.to_dict()
        back = MatchedPair.from_dict(doc)
        assert back.to_dict() == doc
        assert verify_matched_pair(back).ok


def test_trivial_pair_needs_groups_without_unit_map():
    with pytest.raises(PreconditionError):
        trivial_matched_pair(F.pair2(), cyclic_group(2))
