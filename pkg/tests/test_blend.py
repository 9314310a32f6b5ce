import numpy as np
import pytest

from zsgroupoid import fixtures as F
from zsgroupoid.algebra import GroupoidFunction, delta
from zsgroupoid.blend import (
    ab_generators,
    ba_generators,
    blend_density,
    check_blend_equivalences,
    check_embeddings_are_homomorphisms,
    embed_i,
    embed_j,
    numerical_rank,
)
from zsgroupoid.errors import PreconditionError
from zsgroupoid.zs import build_zs_product

from .oracles import exact_rank


@pytest.fixture(scope="module")
def products():
    return {name: build_zs_product(mp) for name, mp in F.named_matched_pairs().items()}


def test_embeddings_of_point_masses(products):
    zs = products["skewmp"]
    mp = zs.pair
    for x in mp.g:
        assert embed_i(zs, delta(mp.g, x)).coeffs == {(x, mp.t(x)): 1}
    for y in mp.h:
        assert embed_j(zs, delta(mp.h, y)).coeffs == {(mp.g_unit(mp.l(y)), y): 1}


def test_direct_embed_i_of_sum(products):
    zs = products["direct"]
    f = GroupoidFunction(zs.pair.g, {"e": 1, "a": 1})
    assert embed_i(zs, f).coeffs == {("e", "e"): 1, ("a", "e"): 1}


def test_embed_rejects_wrong_base(products):
    zs = products["direct"]
    with pytest.raises(PreconditionError):
        embed_i(zs, delta(zs.pair.h, "a"))


def test_non_composable_point_masses_map_to_zero(products):
    zs = products["pair2_skewmp"]
    g = zs.pair.g
    x, y = next((x, y) for x in g for y in g if g.compose(x, y) is None)
    prod = embed_i(zs, delta(g, x)) @ embed_i(zs, delta(g, y))
    assert prod.coeffs == {}


@pytest.mark.parametrize("name", ["direct", "trivz2", "skewmp", "s3mp", "pair2_skewmp"])
def test_homomorphisms(products, name):
    rep = check_embeddings_are_homomorphisms(products[name], trials=100)
    assert rep.ok
    assert rep.max_error < 1e-9


@pytest.mark.parametrize("name,dim", [("direct", 6), ("trivz2", 2), ("skewmp", 8), ("s4mp", 24)])
def test_span_rank_examples(products, name, dim):
    zs = products[name]
    wit = blend_density(zs, trials=20)
    assert (wit.span_rank, wit.target_dim) == (dim, dim)
    assert wit.dense and wit.ok
    assert exact_rank(ab_generators(zs)) == dim


@pytest.mark.parametrize("name,dim", [("direct", 6), ("trivz2", 2), ("skewmp", 8)])
def test_equivalences(products, name, dim):
    zs = products[name]
    rep = check_blend_equivalences(zs)
    assert rep.spans_equal and rep.ab_dim == dim
    assert exact_rank(ba_generators(zs)) == dim


def test_numerical_rank_basics():
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.zeros((0, 4))) == 0
    assert numerical_rank(np.eye(4)) == 4
    m = np.array([[1.0, 2.0], [2.0, 4.0 + 1e-15]])
    assert numerical_rank(m) == 1
    assert numerical_rank(np.diag([1.0, 1e-6]), tol=1e-3) == 1


def test_sub_span_is_detected_when_not_dense():
    # three vectors spanning a 2-dimensional subspace of C^3
    rows = np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=complex)
    assert numerical_rank(rows) == 2 == exact_rank(rows)


def test_witness_json_keys(products):
    d = blend_density(products["skewmp"], trials=5).to_dict()
    assert list(d) == ["span_rank", "target_dim", "dense", "i_hom_ok", "j_hom_ok", "commuting_spans_ok"]
