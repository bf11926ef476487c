"""Partition enumeration, crossing/nesting statistics, and the moment sum."""

import pytest

from qtmoments.partitions import (
    NestingMode,
    SetPartition,
    enumerate_partitions,
    moment_by_partitions,
    partition_record,
    restricted_crossings,
    restricted_nestings,
)
from qtmoments.ring import LAMBDA, Poly

from oracles import (
    bell_numbers,
    catalan_numbers,
    quadruple_crossings,
    quadruple_nestings,
    tridiagonal_moment,
)

STRICT = NestingMode.STRICT
COVERED = NestingMode.COVERED_SINGLETON


def test_counts_match_bell_recurrence():
    bell = bell_numbers(10)
    assert sum(1 for _ in enumerate_partitions(1)) == 1
    assert sum(1 for _ in enumerate_partitions(3)) == bell[3] == 5
    assert sum(1 for _ in enumerate_partitions(10)) == bell[10] == 115975


def test_enumeration_is_lexicographic_and_unique():
    seen = [p.rgs for p in enumerate_partitions(5)]
    assert seen == sorted(seen)
    assert len(seen) == len(set(seen))


def test_rgs_validation():
    with pytest.raises(ValueError):
        SetPartition(3, (0, 2, 0))  # skips block index 1
    with pytest.raises(ValueError):
        SetPartition(2, (1, 0))


def test_from_blocks_round_trip():
    p = SetPartition.from_blocks([[1, 3, 4, 7], [2, 5, 10], [6, 9], [8]])
    assert p.blocks() == [[1, 3, 4, 7], [2, 5, 10], [6, 9], [8]]
    assert p.block_count == 4


def test_worked_statistics_examples():
    p1 = SetPartition.from_blocks([[1, 3, 4, 7], [2, 5, 10], [6, 9], [8]])
    assert restricted_crossings(p1) == 4
    assert restricted_nestings(p1, STRICT) == 2

    p2 = SetPartition.from_blocks([[1, 4, 6, 9], [2, 3, 10], [5], [7, 8]])
    assert restricted_crossings(p2) == 1
    assert restricted_nestings(p2, STRICT) == 5


def test_all_singletons_have_no_statistics():
    p = SetPartition(5, (0, 1, 2, 3, 4))
    assert restricted_crossings(p) == 0
    assert restricted_nestings(p, STRICT) == 0
    assert restricted_nestings(p, COVERED) == 0


def test_covered_singleton_mode():
    p = SetPartition.from_blocks([[1, 3], [2]])
    assert restricted_nestings(p, STRICT) == 0
    assert restricted_nestings(p, COVERED) == 1


def test_statistics_match_quadruple_definition():
    for p in enumerate_partitions(7):
        blocks = p.blocks()
        assert restricted_crossings(p) == quadruple_crossings(blocks)
        assert restricted_nestings(p, STRICT) == quadruple_nestings(blocks)


def test_statistics_bounds():
    from math import comb

    for p in enumerate_partitions(7):
        arc_count = p.n - p.block_count
        bound = comb(arc_count, 2)
        assert 0 <= restricted_crossings(p) <= bound
        assert 0 <= restricted_nestings(p, STRICT) <= bound


def test_first_moment_is_lambda():
    assert moment_by_partitions(1, STRICT) == LAMBDA
    assert moment_by_partitions(1, COVERED) == LAMBDA


def test_second_moment_both_modes():
    expected = LAMBDA**2 + LAMBDA
    assert moment_by_partitions(2, STRICT) == expected
    assert moment_by_partitions(2, COVERED) == expected


def test_third_moment_covered_matches_table():
    expected = Poly.parse("lambda^3 + lambda^2*t + 2*lambda^2 + lambda")
    assert moment_by_partitions(3, COVERED) == expected


def test_third_moment_strict_matches_tridiagonal_oracle():
    from qtmoments.orthopoly import charlier_strict

    j = charlier_strict()
    assert moment_by_partitions(3, STRICT) == tridiagonal_moment(j.alpha, j.omega, 3)
    assert moment_by_partitions(3, STRICT) == Poly.parse("lambda^3 + 3*lambda^2 + lambda")


def test_fourth_moment_covered_matches_table():
    expected = Poly.parse(
        "lambda^3*t^2 + lambda^4 + 2*lambda^3*t + 3*lambda^3"
        " + 3*lambda^2*t + lambda^2*q + 3*lambda^2 + lambda"
    )
    assert moment_by_partitions(4, COVERED) == expected


def test_crossing_nesting_duality():
    # In strict mode the joint distribution of (rc, rn) is symmetric:
    # swapping q and t leaves each moment unchanged.
    for n in range(1, 9):
        p = moment_by_partitions(n, STRICT)
        assert p.rename({"q": "t", "t": "q"}) == p


def test_bell_specialization():
    bell = bell_numbers(8)
    for mode in (STRICT, COVERED):
        for n in range(1, 8):
            value = moment_by_partitions(n, mode).eval({"q": 1, "t": 1, "lambda": 1})
            assert value == bell[n]


def test_catalan_specialization():
    cat = catalan_numbers(10)
    for n in range(1, 10):
        value = moment_by_partitions(n, STRICT).eval({"q": 0, "t": 1, "lambda": 1})
        assert value == cat[n]


def test_parallel_enumeration_matches_serial():
    for mode in (STRICT, COVERED):
        assert moment_by_partitions(8, mode, workers=2) == moment_by_partitions(8, mode)


def test_partition_record():
    p = SetPartition.from_blocks([[1, 3], [2]])
    assert partition_record(p) == {
        "rgs": [0, 1, 0],
        "blocks": 2,
        "rc": 0,
        "rn_strict": 0,
        "rn_covered": 1,
    }
