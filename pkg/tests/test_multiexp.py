"""Group abstraction, precomputation, and the exact-counting evaluator."""

import random

import pytest

from digitkit.expansions import Expansion, JointExpansion
from digitkit.multiexp import (
    MERSENNE61,
    AdditiveGroup,
    CostCounter,
    CountingGroup,
    ModGroup,
    evaluate,
    is_probable_prime,
    multiexp,
    precompute,
    square_and_multiply,
)
from digitkit.recoding import RecodingScheme, recode_joint, wllc_recode


def test_is_probable_prime():
    assert is_probable_prime(2)
    assert is_probable_prime(3)
    assert is_probable_prime(101)
    assert is_probable_prime(MERSENNE61)
    assert not is_probable_prime(0)
    assert not is_probable_prime(1)
    assert not is_probable_prime(561)
    assert not is_probable_prime((1 << 61) + 1)
    small_primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_probable_prime(n) == (n in small_primes)


def test_modgroup_validation_and_arithmetic():
    g = ModGroup(101)
    assert g.identity == 1
    assert g.multiply(84, 68) == 56
    assert g.multiply(g.invert(7), 7) == 1
    assert g.element(-1) == 100
    assert g.element(203) == 1
    with pytest.raises(ValueError):
        g.element(202)
    with pytest.raises(ValueError):
        ModGroup(100)
    with pytest.raises(ValueError):
        ModGroup(2)
    with pytest.raises(ValueError):
        ModGroup(9)


def test_additive_group():
    g = AdditiveGroup()
    assert g.identity == 0
    assert g.multiply(4, 5) == 9
    assert g.invert(4) == -4
    assert g.element(-3) == -3


def test_cost_counter():
    c = CostCounter(squarings=3, multiplications=2, precomp_multiplications=4)
    assert c.total_multiplications() == 5
    c.reset()
    assert (c.squarings, c.multiplications, c.inversions, c.precomp_multiplications) == (0, 0, 0, 0)


def test_counting_group_distinguishes_square_from_multiply():
    counter = CostCounter()
    cg = CountingGroup(ModGroup(101), counter)
    assert cg.square(10) == 100 % 101
    assert cg.multiply(10, 10) == 100
    assert counter.squarings == 1
    assert counter.multiplications == 1


def test_precompute_pair_table():
    g = ModGroup(101)
    table = precompute((2, 3), g)
    assert table.dimension == 2
    assert len(table.entries) == 9
    assert table.precomp_multiplications == 2
    assert table.inversions == 5
    assert table[(0, 0)] == 1
    assert table[(1, 1)] == 6
    assert table[(1, 0)] == 2
    assert table[(0, 1)] == 3
    for v in table.entries:
        neg = tuple(-d for d in v)
        assert g.multiply(table[v], table[neg]) == 1


def test_precompute_single_base():
    g = ModGroup(101)
    table = precompute((2,), g)
    assert len(table.entries) == 3
    assert table.precomp_multiplications == 0
    assert table.inversions == 1
    with pytest.raises(ValueError):
        precompute((), g)


def test_evaluate_frozen_example():
    g = ModGroup(101)
    joint = recode_joint((5, 3), RecodingScheme.STACKED_NAF)
    table = precompute((2, 3), g)
    result, counter = evaluate(joint, table, g)
    assert result == 56
    assert counter.squarings == 2
    assert counter.multiplications == 1
    assert counter.precomp_multiplications == 2
    assert counter.inversions == 5


def test_evaluate_magnitude_two_digit():
    g = ModGroup(101)
    row = wllc_recode(6, 3)
    assert row.digits == (-2, 0, 0, 1)
    joint = JointExpansion((row,))
    result, counter = evaluate(joint, precompute((2,), g), g)
    assert result == pow(2, 6, 101)
    assert counter.multiplications == 2
    assert counter.squarings == 3


def test_evaluate_empty_and_zero_joints():
    g = ModGroup(101)
    table = precompute((2, 3), g)
    empty = JointExpansion((Expansion(), Expansion()))
    result, counter = evaluate(empty, table, g)
    assert result == 1
    assert counter.squarings == 0
    assert counter.multiplications == 0

    zero = JointExpansion((Expansion((0, 0)), Expansion((0, 0))))
    result, counter = evaluate(zero, table, g)
    assert result == 1
    assert counter.squarings == 1
    assert counter.multiplications == 0


def test_evaluate_rejects_mismatches():
    g = ModGroup(101)
    table = precompute((2, 3), g)
    joint = recode_joint((5,), RecodingScheme.NAF)
    with pytest.raises(ValueError):
        evaluate(joint, table, g)
    other = recode_joint((5, 3), RecodingScheme.SJSF)
    with pytest.raises(ValueError):
        evaluate(other, table, ModGroup(103))


def test_evaluate_counts_follow_the_expansion():
    rng = random.Random(3)
    g = ModGroup(MERSENNE61)
    table = precompute((2, 3), g)
    for scheme in RecodingScheme:
        for _ in range(50):
            length = rng.randint(1, 48)
            exps = (rng.getrandbits(length), rng.getrandbits(length))
            if not any(exps):
                continue
            if scheme is RecodingScheme.WLLC:
                joint = recode_joint(exps, scheme, length=length)
            else:
                joint = recode_joint(exps, scheme)
            result, counter = evaluate(joint, table, g)
            expected = (
                pow(2, exps[0], MERSENNE61) * pow(3, exps[1], MERSENNE61)
            ) % MERSENNE61
            assert result == expected
            top = 1 if any(row.digits[-1] for row in joint.rows) else 0
            assert counter.multiplications == joint.weight1() - top
            assert counter.squarings == len(joint) - 1


def test_square_and_multiply_frozen_example():
    g = ModGroup(101)
    result, counter = square_and_multiply(2, 13, g)
    assert result == 11
    assert counter.squarings == 3
    assert counter.multiplications == 2
    result, counter = square_and_multiply(2, 0, g)
    assert result == 1
    assert counter.total_multiplications() == 0
    with pytest.raises(ValueError):
        square_and_multiply(2, -1, g)


def test_square_and_multiply_matches_pow():
    g = ModGroup(101)
    rng = random.Random(9)
    for _ in range(100):
        a = rng.randrange(1, 101)
        n = rng.randrange(0, 1 << 20)
        result, counter = square_and_multiply(a, n, g)
        assert result == pow(a, n, 101)
        if n:
            assert counter.squarings == n.bit_length() - 1
            assert counter.multiplications == bin(n).count("1") - 1


def test_multiexp_schemes_agree():
    g = ModGroup(101)
    expected = (pow(2, 13, 101) * pow(3, 5, 101)) % 101
    for scheme in RecodingScheme:
        result, _ = multiexp((2, 3), (13, 5), scheme, g)
        assert result == expected


def test_multiexp_additive_oracle():
    g = AdditiveGroup()
    result, _ = multiexp((1, 0), (13, 5), RecodingScheme.WLLC, g)
    assert result == 13
    result, _ = multiexp((5, 7), (13, 5), RecodingScheme.SJSF, g)
    assert result == 5 * 13 + 7 * 5
