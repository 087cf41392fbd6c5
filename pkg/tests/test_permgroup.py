"""Permutations, partitions, conjugacy classes, derangement counts."""

import itertools
import math

import pytest

from ekrperm.permgroup import (
    ClassInfo,
    DegreeRangeError,
    Permutation,
    agreements,
    all_permutations,
    class_representative,
    class_size,
    classes_with_few_fixed_points,
    compose,
    conjugacy_classes,
    cycle_type,
    derangement_count,
    fixed_points,
    identity,
    inverse,
    parse_cycles,
    parse_one_line,
    partition_depth,
    partitions_of,
    rank_permutation,
    unrank_permutation,
)

import oracles


class TestPermutationBasics:
    def test_identity_fixes_everything(self):
        e = identity(5)
        assert e.images == (1, 2, 3, 4, 5)
        assert fixed_points(e) == 5
        assert all(e(i) == i for i in range(1, 6))

    def test_application_is_one_based(self):
        p = Permutation((3, 1, 2))
        assert (p(1), p(2), p(3)) == (3, 1, 2)

    def test_invalid_images_rejected(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 3))
        with pytest.raises(ValueError):
            Permutation((0, 1, 2))
        with pytest.raises(ValueError):
            Permutation((2, 3, 4))

    def test_compose_applies_right_factor_first(self):
        p = parse_one_line("2,3,1")
        q = parse_one_line("1,3,2")
        # (p*q)(i) = p(q(i))
        r = compose(p, q)
        assert r.images == tuple(p(q(i)) for i in (1, 2, 3))
        assert r.images == (2, 1, 3)

    def test_compose_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(identity(3), identity(4))

    def test_inverse(self):
        p = parse_one_line("2,3,1")
        assert inverse(p).images == (3, 1, 2)
        for images in itertools.permutations(range(1, 5)):
            p = Permutation(images)
            assert compose(p, inverse(p)) == identity(4)
            assert compose(inverse(p), p) == identity(4)

    def test_str_is_comma_separated(self):
        assert str(parse_one_line("4,3,1,2")) == "4,3,1,2"


class TestRanking:
    """Lexicographic rank agrees with itertools.permutations order."""

    def test_rank_zero_is_identity(self):
        assert rank_permutation(identity(4)) == 0

    def test_last_rank_is_reversal(self):
        assert unrank_permutation(23, 4).images == (4, 3, 2, 1)

    def test_matches_itertools_order(self):
        for rank, images in enumerate(itertools.permutations(range(1, 6))):
            p = Permutation(images)
            assert rank_permutation(p) == rank
            assert unrank_permutation(rank, 5) == p

    def test_round_trip_degree_seven(self):
        for rank in (0, 1, 1000, math.factorial(7) - 1):
            assert rank_permutation(unrank_permutation(rank, 7)) == rank

    def test_rank_out_of_range(self):
        with pytest.raises(ValueError):
            unrank_permutation(24, 4)
        with pytest.raises(ValueError):
            unrank_permutation(-1, 4)

    def test_all_permutations_is_lex_ordered(self):
        perms = list(all_permutations(4))
        assert len(perms) == 24
        assert [rank_permutation(p) for p in perms] == list(range(24))


class TestCycleStructure:
    def test_cycle_type_of_identity(self):
        assert cycle_type(identity(5)) == (1, 1, 1, 1, 1)

    def test_cycle_type_of_four_cycle(self):
        assert cycle_type(parse_one_line("4,3,1,2")) == (4,)

    def test_cycle_type_is_a_partition(self):
        for p in all_permutations(5):
            t = cycle_type(p)
            assert sum(t) == 5
            assert list(t) == sorted(t, reverse=True)

    def test_fixed_points_match_ones_in_cycle_type(self):
        for p in all_permutations(4):
            assert fixed_points(p) == cycle_type(p).count(1)

    def test_parse_cycles(self):
        # one cycle: 1 -> 4 -> 2 -> 3 -> 1
        assert parse_cycles("(1,4,2,3)", 4).images == (4, 3, 1, 2)
        assert parse_cycles("(1,2)(3,4)", 4).images == (2, 1, 4, 3)
        assert parse_cycles("", 4) == identity(4)

    def test_parse_cycles_rejects_repeats(self):
        with pytest.raises(ValueError):
            parse_cycles("(1,2)(2,3)", 4)


class TestAgreements:
    def test_worked_example(self):
        p = parse_one_line("1,2,4,3")
        q = parse_one_line("1,3,4,2")
        assert agreements(p, q) == 2

    def test_self_agreement_is_degree(self):
        p = parse_one_line("3,1,2")
        assert agreements(p, p) == 3

    def test_agreements_via_quotient(self):
        # the number of agreements of p and q equals the number of fixed
        # points of inverse(p) * q
        for p, q in itertools.product(all_permutations(4), repeat=2):
            assert agreements(p, q) == fixed_points(compose(inverse(p), q))


class TestPartitions:
    def test_reverse_lex_order(self):
        assert partitions_of(4) == (
            (4,),
            (3, 1),
            (2, 2),
            (2, 1, 1),
            (1, 1, 1, 1),
        )

    def test_counts_match_oracle(self):
        for n in range(1, 10):
            assert len(partitions_of(n)) == oracles.partition_count(n)

    def test_order_matches_oracle(self):
        for n in range(1, 9):
            assert list(partitions_of(n)) == oracles.partitions_reverse_lex(n)

    def test_depth_is_degree_minus_largest_part(self):
        assert partition_depth((4,)) == 0
        assert partition_depth((3, 1)) == 1
        assert partition_depth((2, 2)) == 2
        assert partition_depth((1, 1, 1, 1)) == 3


class TestConjugacyClasses:
    def test_class_sizes_small(self):
        assert class_size((1, 1, 1, 1)) == 1
        assert class_size((2, 2)) == 3
        assert class_size((4,)) == 6
        assert class_size((2, 1, 1)) == 6
        assert class_size((3, 1)) == 8

    def test_class_sizes_sum_to_group_order(self):
        for n in range(1, 11):
            assert sum(class_size(t) for t in partitions_of(n)) == math.factorial(n)

    def test_class_sizes_match_enumeration(self):
        sizes, _ = oracles.classes_by_enumeration(5)
        for t in partitions_of(5):
            assert class_size(t) == sizes[t]

    def test_representative_has_the_right_type(self):
        for t in partitions_of(6):
            assert cycle_type(class_representative(t)) == t

    def test_conjugacy_classes_reverse_lex(self):
        infos = conjugacy_classes(4)
        assert [c.cycle_type for c in infos] == list(partitions_of(4))
        assert [c.size for c in infos] == [6, 8, 3, 6, 1]
        assert all(isinstance(c, ClassInfo) for c in infos)

    def test_fixed_point_filter(self):
        zero = classes_with_few_fixed_points(4, 0)
        assert [c.cycle_type for c in zero] == [(4,), (2, 2)]
        one = classes_with_few_fixed_points(4, 1)
        assert [c.cycle_type for c in one] == [(4,), (3, 1), (2, 2)]
        # identity class is excluded even at the largest allowed threshold
        assert all(
            c.cycle_type != (1, 1, 1, 1)
            for c in classes_with_few_fixed_points(4, 3)
        )
        with pytest.raises(ValueError):
            classes_with_few_fixed_points(4, 4)


class TestDerangementCounts:
    # 0, 1, 2, 9, 44, 265, 1854, 14833 for n = 1..8
    def test_small_values(self):
        assert [derangement_count(n) for n in range(1, 9)] == [
            0, 1, 2, 9, 44, 265, 1854, 14833,
        ]

    def test_matches_inclusion_exclusion(self):
        for n in range(1, 12):
            assert derangement_count(n) == oracles.derangements_by_inclusion_exclusion(n)

    def test_matches_brute_force(self):
        for n in range(1, 8):
            brute = sum(1 for p in all_permutations(n) if fixed_points(p) == 0)
            assert derangement_count(n) == brute

    def test_matches_class_size_sum(self):
        for n in range(2, 10):
            total = sum(
                c.size for c in classes_with_few_fixed_points(n, 0)
            )
            assert derangement_count(n) == total


def test_degree_guard():
    with pytest.raises(DegreeRangeError):
        identity(0)
    with pytest.raises(DegreeRangeError):
        unrank_permutation(0, 0)
