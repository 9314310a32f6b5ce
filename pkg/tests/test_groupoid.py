import pytest

from zsgroupoid import fixtures as F
from zsgroupoid.constructions import cyclic_group, direct_product, pair_groupoid, s3
from zsgroupoid.errors import SearchTooLarge, StructuralError
from zsgroupoid.groupoid import (
    FiniteGroupoid,
    enumerate_slices,
    find_isomorphism,
    is_isomorphism,
    is_slice,
    is_subgroupoid,
    validate_groupoid,
)
from zsgroupoid.zs import build_zs_product

from .oracles import brute_isomorphic


def test_named_groupoids_validate():
    for name, g in F.named_groupoids().items():
        assert validate_groupoid(g).ok, name


def test_inverse_redefined_is_caught_at_a():
    rep = validate_groupoid(F.corrupted_groupoids()["involutivity"])
    assert not rep.ok
    witnesses = [v.witness for v in rep.violations if v.rule == "involutivity"]
    assert witnesses == [("a",)]


@pytest.mark.parametrize("rule", ["associativity", "involutivity", "cancellation"])
def test_each_corruption_flags_its_axiom(rule):
    rep = validate_groupoid(F.corrupted_groupoids()[rule])
    assert rule in rep.violated_rules()


def test_associativity_witness_is_genuine():
    g = F.corrupted_groupoids()["associativity"]
    v = next(v for v in validate_groupoid(g).violations if v.rule == "associativity")
    x, y, z = v.witness
    assert g.compose(g.compose(x, y), z) != g.compose(x, g.compose(y, z))


def test_structural_errors():
    with pytest.raises(StructuralError):
        FiniteGroupoid(["e"], {("e", "e"): "f"}, {"e": "e"})
    with pytest.raises(StructuralError):
        FiniteGroupoid(["e", "e"], {}, {"e": "e"})
    with pytest.raises(StructuralError):
        FiniteGroupoid(["e", "a"], {("e", "e"): "e"}, {"e": "e"})


def test_pair2_bookkeeping():
    g = F.pair2()
    assert set(g.units) == {("1", "1"), ("2", "2")}
    assert g.range(("1", "2")) == ("1", "1")
    assert g.source(("1", "2")) == ("2", "2")


def test_group_units():
    assert F.z2().units == ("e",)
    g = s3()
    assert g.units == ("e",)
    assert all(g.range(x) == g.source(x) == "e" for x in g)


def test_subgroupoids_of_s3():
    g = s3()
    assert is_subgroupoid(g, {"e", "r", "r2"})
    assert is_subgroupoid(g, {"e", "s"})
    assert not is_subgroupoid(g, {"r"})
    with pytest.raises(StructuralError):
        is_subgroupoid(g, {"nope"})


def test_isomorphism_examples():
    z2 = F.z2()
    phi = find_isomorphism(z2, z2)
    assert phi == {"e": "e", "a": "a"}
    assert find_isomorphism(z2, F.trivial()) is None


def test_direct_product_is_z6():
    prod = build_zs_product(F.direct()).product
    z6 = F.z6()
    assert brute_isomorphic(prod, z6)
    phi = find_isomorphism(prod, z6)
    assert phi is not None and is_isomorphism(prod, z6, phi)


def test_non_isomorphic_same_size():
    # Z4 vs Klein four-group: same size, different structure
    assert not brute_isomorphic(F.z4(), F.klein())
    assert find_isomorphism(F.z4(), F.klein()) is None


def test_find_isomorphism_on_random_relabelling():
    import numpy as np

    rng = np.random.default_rng(5)
    for _ in range(5):
        g = F.random_groupoid(rng, max_elements=20)
        perm = rng.permutation(len(g))
        mapping = {x: f"y{perm[i]}" for i, x in enumerate(g.elements)}
        h = g.relabel(mapping)
        phi = find_isomorphism(g, h)
        assert phi is not None and is_isomorphism(g, h, phi)


def test_size_guard():
    big = direct_product(pair_groupoid(range(8)), cyclic_group(2))
    with pytest.raises(SearchTooLarge):
        find_isomorphism(big, big, max_size=100)


def test_slices_of_pair2():
    g = F.pair2()
    assert is_slice(g, {("1", "2")})
    assert not is_slice(g, {("1", "1"), ("1", "2")})
    assert not is_slice(F.z2(), {"e", "a"})
    assert sorted(map(sorted, enumerate_slices(g))) == sorted(
        [sorted([("1", "1"), ("2", "2")]), sorted([("1", "2"), ("2", "1")])]
    )


def test_maximal_slices_are_maximal():
    g = direct_product(pair_groupoid(["p", "q", "r"]), cyclic_group(2))
    slices = enumerate_slices(g)
    for s in slices:
        assert is_slice(g, s)
        assert all(not is_slice(g, set(s) | {x}) for x in g if x not in s)


def test_file_round_trip():
    for g in F.named_groupoids().values():
        doc = g.to_dict()
        back = FiniteGroupoid.from_dict(doc)
        assert back.to_dict() == doc
        assert validate_groupoid(back).ok


def test_from_dict_rejects_bad_labels():
    with pytest.raises(StructuralError):
        FiniteGroupoid.from_dict({"elements": [""], "inverse": {"": ""}, "compose": [["", "", ""]]})
