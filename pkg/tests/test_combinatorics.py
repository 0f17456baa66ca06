from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import all_compositions
from pmlab.combinatorics import (
    Composition,
    DomainPoint,
    GammaSet,
    compare_b,
    compositions,
    compositions_b,
    epsilon_set,
    parse_gamma,
    zero_class,
    zero_class_size,
)
from pmlab.errors import (
    EmptySetError,
    GammaParseError,
    InvalidArgumentError,
    InvalidDegreeError,
)


def test_compositions_degree_one():
    assert compositions(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_compositions_clex_prefix_matches_listed_sequence():
    d = 6
    assert compositions(d)[:4] == [(d, 0, 0), (d - 1, 1, 0), (d - 1, 0, 1), (d - 2, 2, 0)]
    assert compositions(d)[-1] == (0, 0, d)


@pytest.mark.parametrize("d", range(1, 13))
def test_compositions_match_exhaustive_generation(d):
    got = compositions(d)
    assert len(got) == comb(d + 2, 2)
    assert sorted(got) == sorted(all_compositions(d))
    assert len(set(got)) == len(got)


def test_degree_ten_contains_235_once():
    c = compositions(10)
    assert len(c) == 66
    assert c.count((2, 3, 5)) == 1


@pytest.mark.parametrize("d", [0, -3])
def test_compositions_rejects_bad_degree(d):
    with pytest.raises(InvalidDegreeError):
        compositions(d)


@pytest.mark.parametrize("c,z", [((4, 0, 0), 2), ((3, 1, 0), 1), ((2, 1, 1), 0)])
def test_zero_class(c, z):
    assert zero_class(c) == z


def test_b_order_of_I4_matches_table_layout():
    assert compositions_b(4) == [
        (4, 0, 0), (0, 4, 0), (0, 0, 4),
        (3, 1, 0), (2, 2, 0), (1, 3, 0),
        (3, 0, 1), (2, 0, 2), (1, 0, 3),
        (0, 3, 1), (0, 2, 2), (0, 1, 3),
        (2, 1, 1), (1, 2, 1), (1, 1, 2),
    ]


def test_compare_b_examples():
    assert compare_b((2, 1, 1), (1, 2, 1)) == 1
    assert compare_b((1, 2, 1), (2, 1, 1)) == -1
    assert compare_b((3, 1, 0), (3, 1, 0)) == 0
    # higher zero class wins regardless of c-lex
    assert compare_b((0, 0, 4), (3, 1, 0)) == 1


def test_compare_b_rejects_mixed_degrees():
    with pytest.raises(InvalidArgumentError):
        compare_b((1, 0, 0), (2, 0, 0))


@pytest.mark.parametrize("d", range(1, 11))
def test_b_order_is_strict_total_order(d):
    I = compositions(d)
    for a, b in product(I, I):
        assert compare_b(a, b) == -compare_b(b, a)
        assert (compare_b(a, b) == 0) == (a == b)
    for a, b, c in product(I[:12], I[:12], I[:12]):
        if compare_b(a, b) > 0 and compare_b(b, c) > 0:
            assert compare_b(a, c) > 0


@pytest.mark.parametrize("d", range(2, 11))
def test_b_order_groups_classes_and_edges(d):
    order = compositions_b(d)
    zs = [c.zero_count for c in order]
    assert zs == sorted(zs, reverse=True)
    edges = [c.edge() for c in order if c.zero_count == 1]
    assert edges == ["uv"] * (d - 1) + ["uw"] * (d - 1) + ["vw"] * (d - 1)


@pytest.mark.parametrize("d", range(3, 12))
def test_zero_class_sizes(d):
    sizes = [zero_class_size(d, z) for z in (2, 1, 0)]
    assert sizes == [3, 3 * (d - 1), comb(d - 1, 2)]
    assert sum(sizes) == comb(d + 2, 2)
    for z, n in zip((2, 1, 0), sizes):
        assert sum(1 for c in compositions(d) if c.zero_count == z) == n


def test_epsilon_sets():
    assert epsilon_set(4, "uv").members == ((3, 1, 0), (2, 2, 0), (1, 3, 0))
    assert epsilon_set(2, "vw").members == ((0, 1, 1),)
    assert len(epsilon_set(5, "uw")) == 4
    with pytest.raises(EmptySetError):
        epsilon_set(1, "uv")
    with pytest.raises(InvalidArgumentError):
        epsilon_set(4, "xy")


def test_domain_point():
    p = DomainPoint(Composition(2, 1, 1), 4)
    assert sum(p.barycentric) == 1
    assert not p.is_boundary
    assert DomainPoint(Composition(3, 1, 0), 4).is_boundary
    with pytest.raises(InvalidArgumentError):
        DomainPoint(Composition(3, 1, 1), 4)


def test_gamma_set_canonical_order_and_rejections():
    g = GammaSet(4, [(1, 1, 2), (4, 0, 0), (2, 2, 0)])
    assert g.members == ((4, 0, 0), (2, 2, 0), (1, 1, 2))
    with pytest.raises(InvalidArgumentError):
        GammaSet(4, [(2, 1, 1), (2, 1, 1)])
    with pytest.raises(InvalidArgumentError):
        GammaSet(4, [(2, 1, 0)])
    assert GammaSet(4, [(2, 1, 1), (1, 2, 1)]) == GammaSet(4, [(1, 2, 1), (2, 1, 1)])


def test_gamma_text_and_json_forms():
    assert parse_gamma("3,1,0;2,2,0;1,3,0") == [(3, 1, 0), (2, 2, 0), (1, 3, 0)]
    assert parse_gamma("[[3,1,0],[2,2,0]]") == [(3, 1, 0), (2, 2, 0)]
    g = GammaSet.parse(4, "1,3,0;3,1,0")
    assert g.to_text() == "3,1,0;1,3,0"
    assert g.to_json() == [[3, 1, 0], [1, 3, 0]]


@pytest.mark.parametrize("bad", ["3,1", "3,1,x", "a;b", "3,-1,2", "[[1,2]]"])
def test_gamma_parse_errors_name_the_token(bad):
    with pytest.raises(GammaParseError):
        parse_gamma(bad)


@given(st.integers(1, 9), st.data())
def test_gamma_subset_masks_round_trip(d, data):
    full = GammaSet.full(d)
    mask = data.draw(st.integers(1, 2 ** len(full) - 1))
    sub = full.subset(mask)
    assert len(sub) == bin(mask).count("1")
    assert all(c in full for c in sub)
