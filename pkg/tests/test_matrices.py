import random
from fractions import Fraction
from math import prod

import pytest

from oracles import all_compositions, cofactor_det, collocation
from pmlab.combinatorics import GammaSet, compositions, epsilon_set
from pmlab.errors import EmptySetError, InvalidConfigurationError
from pmlab.matrices import (
    block_factorize,
    build_M,
    build_N,
    evaluate,
    full_N,
    line_config_reduce,
    multi_power,
    multinomial,
    scale_det_relation,
    univariate_collocation,
)


@pytest.mark.parametrize(
    "base,exp,value",
    [((3, 1, 0), (3, 1, 0), 27), ((2, 2, 0), (3, 1, 0), 16), ((0, 4, 0), (0, 4, 0), 256), ((0, 4, 0), (4, 0, 0), 0)],
)
def test_multi_power(base, exp, value):
    assert multi_power(base, exp) == value


def test_build_N_table_blocks():
    edge = GammaSet(4, [(3, 1, 0), (2, 2, 0), (1, 3, 0)])
    inner = GammaSet(4, [(2, 1, 1), (1, 2, 1), (1, 1, 2)])
    assert build_N(edge).entries == ((27, 9, 3), (16, 16, 16), (3, 9, 27))
    assert build_N(inner).entries == ((4, 2, 2), (2, 4, 2), (2, 2, 4))
    assert build_N(GammaSet.full(1)).entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert build_N(edge).denom_exp == 0


def test_build_M_table_blocks():
    edge = build_M(GammaSet(4, [(3, 1, 0), (2, 2, 0), (1, 3, 0)]))
    assert edge.denom_exp == 4 and edge.degree == 4
    assert edge.entries == ((108, 54, 12), (64, 96, 64), (12, 54, 108))
    assert edge.to_fractions() == [[Fraction(x, 128) for x in r] for r in ((54, 27, 6), (32, 48, 32), (6, 27, 54))]
    inner = build_M(GammaSet(4, [(2, 1, 1), (1, 2, 1), (1, 1, 2)]))
    assert inner.to_fractions() == [[Fraction(x, 32) for x in r] for r in ((6, 3, 3), (3, 6, 3), (3, 3, 6))]
    assert build_M(GammaSet(4, [(4, 0, 0)])).to_fractions() == [[1]]


def test_builders_reject_empty_gamma():
    with pytest.raises(EmptySetError):
        build_N(GammaSet(3, []))
    with pytest.raises(EmptySetError):
        build_M(GammaSet(3, []))


@pytest.mark.parametrize("d", range(1, 6))
def test_build_M_matches_direct_bernstein_evaluation(d):
    g = GammaSet.full(d)
    assert build_M(g).to_fractions() == collocation(d, g.members)


@pytest.mark.parametrize("d", range(1, 9))
def test_diagonal_entries_positive(d):
    M = build_M(GammaSet.full(d))
    for r, c in enumerate(M.gamma):
        assert M.entries[r][r] == multinomial(d, c) * multi_power(c, c) > 0
        if c.zero_count == 2:
            assert M.value(r, r) == 1


def test_scale_det_relation_examples():
    assert scale_det_relation(GammaSet(2, [(1, 1, 0)]), 1) == Fraction(1, 2)
    assert scale_det_relation(GammaSet(4, [(4, 0, 0)]), 256) == 1
    assert scale_det_relation(GammaSet.full(1), 1) == 1
    # d=4 edge block: det N = 4608 (cofactor oracle), det M = 27/1024
    edge = GammaSet(4, [(3, 1, 0), (2, 2, 0), (1, 3, 0)])
    assert scale_det_relation(edge, 4608) == Fraction(27, 1024)


@pytest.mark.parametrize("d", range(1, 9))
def test_scaling_relation_and_sign_random(d):
    rng = random.Random(d)
    I = compositions(d)
    for _ in range(40):
        g = GammaSet(d, rng.sample(I, rng.randint(1, min(8, len(I)))))
        dn = build_N(g).det_numerator()
        dm = build_M(g).det()
        assert build_M(g).det_numerator() == dn * prod(multinomial(d, c) for c in g)
        assert scale_det_relation(g, dn) == dm
        assert (dn > 0) == (dm > 0)


def test_block_factorize_examples():
    bf = block_factorize(GammaSet.full(4))
    assert bf.block_sizes() == [1, 1, 1, 3, 3, 3, 3]
    assert bf.det() == build_M(GammaSet.full(4)).det()
    two = block_factorize(GammaSet(4, [(4, 0, 0), (2, 1, 1)]))
    assert two.block_sizes() == [1, 1]
    assert two.det() == Fraction(6, 32) == Fraction(3, 16)
    inner = GammaSet(5, [(3, 1, 1), (1, 2, 2), (2, 2, 1)])
    bf = block_factorize(inner)
    assert len(bf.blocks) == 1 and bf.blocks[0] == build_M(inner)


@pytest.mark.parametrize("d", range(1, 7))
def test_block_product_law_random(d):
    rng = random.Random(100 + d)
    I = compositions(d)
    for _ in range(60):
        g = GammaSet(d, rng.sample(I, rng.randint(1, min(8, len(I)))))
        bf = block_factorize(g)
        assert sum(bf.block_sizes()) == len(g)
        assert bf.det() == cofactor_det(collocation(d, g.members))


def test_univariate_collocation():
    assert univariate_collocation(4).to_fractions() == [
        [Fraction(x, 128) for x in r] for r in ((54, 27, 6), (32, 48, 32), (6, 27, 54))
    ]
    assert univariate_collocation(2).to_fractions() == [[Fraction(1, 2)]]
    m3 = univariate_collocation(3)
    assert m3.n == 2 and m3.det() == Fraction(4, 27)
    with pytest.raises(EmptySetError):
        univariate_collocation(1)


@pytest.mark.parametrize("d", range(2, 9))
def test_edge_blocks_identical_after_relabeling(d):
    blocks = [univariate_collocation(d, e).entries for e in ("uv", "uw", "vw")]
    assert blocks[0] == blocks[1] == blocks[2]


def test_line_config_reduce():
    edge = GammaSet(4, [(3, 1, 0), (2, 2, 0), (1, 3, 0)])
    assert line_config_reduce(edge, "k", 0).entries == build_N(edge).entries
    g = GammaSet(4, [(2, 1, 1), (1, 2, 1)])
    red = line_config_reduce(g, "k", 1)
    assert red.entries == ((4, 2), (2, 4))
    assert red.det_numerator() == cofactor_det([[4, 2], [2, 4]]) > 0
    assert line_config_reduce(GammaSet(4, [(0, 2, 2)]), "i", 0).det_numerator() > 0
    with pytest.raises(InvalidConfigurationError):
        line_config_reduce(g, "i", 2)


@pytest.mark.parametrize("d", range(2, 8))
def test_line_config_reduce_divides_N_and_matches_univariate(d):
    rng = random.Random(d)
    for _ in range(20):
        axis = rng.randrange(3)
        k = rng.randint(0, d - 1)
        line = [c for c in compositions(d) if c[axis] == k]
        g = GammaSet(d, rng.sample(line, rng.randint(1, len(line))))
        red = line_config_reduce(g, "ijk"[axis], k)
        N = build_N(g)
        for r in range(N.n):
            for c in range(N.n):
                assert N.entries[r][c] == red.entries[r][c] * multi_power((k,), (k,))
        col = line_config_reduce(g, "ijk"[axis], k, collocation=True)
        assert (col.det_numerator() > 0) == (build_M(g).det_numerator() > 0)


def test_evaluate_reproduces_constants():
    d = 5
    coeffs = {c: 1 for c in compositions(d)}
    for c in all_compositions(d):
        assert evaluate(d, coeffs, [Fraction(x, d) for x in c]) == 1


def test_matrix_dump_uses_decimal_strings():
    dump = full_N(3).to_dict()
    assert dump["degree"] == 3 and dump["denomExp"] == 0
    assert all(isinstance(x, str) for r in dump["entries"] for x in r)
    assert dump["gamma"][0] == [3, 0, 0]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_N_symmetric_part_positive_definite_up_to_four(d):
    from pmlab.exactla import leading_minors

    N = full_N(d).symmetrized()
    assert leading_minors(N).all_positive


def test_N_symmetric_part_not_positive_definite_at_five():
    from pmlab.exactla import inertia_at_shift

    N = full_N(5).symmetrized()
    assert inertia_at_shift(N, 0).n_neg > 0


def test_epsilon_set_matches_univariate_block():
    assert univariate_collocation(5).gamma == epsilon_set(5, "uv")
