"""Exact symmetric-group character tables against an independent oracle.

The oracle builds each table from scratch: permutation characters of
set-partition actions, orthogonalized exactly over the rationals.  No code
is shared with the package.
"""

import csv
import io
import math

import pytest

from ekrperm.chartab import (
    MAX_TABLE_DEGREE,
    CharacterTable,
    character_table,
    character_value,
    check_column_orthogonality,
    check_row_orthogonality,
    conjugate_partition,
    dimension,
    hook_lengths,
    n_cycle_character,
    table_to_csv,
)
from ekrperm.errors import DegreeRangeError
from ekrperm.permgroup import all_permutations, class_size, cycle_type, partitions_of

import oracles

# Degree-4 table, rows and columns in reverse-lex partition order.
# Recomputed by the tabloid-and-orthogonalize oracle before freezing.
TABLE_4 = {
    (4,): (1, 1, 1, 1, 1),
    (3, 1): (-1, 0, -1, 1, 3),
    (2, 2): (0, -1, 2, 0, 2),
    (2, 1, 1): (1, 0, -1, -1, 3),
    (1, 1, 1, 1): (-1, 1, 1, -1, 1),
}

# Degree-5 table from the same oracle, classes ordered
# (5), (4,1), (3,2), (3,1,1), (2,2,1), (2,1,1,1), (1,1,1,1,1).
TABLE_5 = {
    (5,): (1, 1, 1, 1, 1, 1, 1),
    (4, 1): (-1, 0, -1, 1, 0, 2, 4),
    (3, 2): (0, -1, 1, -1, 1, 1, 5),
    (3, 1, 1): (1, 0, 0, 0, -2, 0, 6),
    (2, 2, 1): (0, 1, -1, -1, 1, -1, 5),
    (2, 1, 1, 1): (-1, 0, 1, 1, 0, -2, 4),
    (1, 1, 1, 1, 1): (1, -1, -1, 1, 1, -1, 1),
}


class TestShapeHelpers:
    def test_conjugate_partition(self):
        assert conjugate_partition((3, 1)) == (2, 1, 1)
        assert conjugate_partition((2, 2)) == (2, 2)
        assert conjugate_partition((4,)) == (1, 1, 1, 1)

    def test_hook_lengths(self):
        assert hook_lengths((2, 2)) == [[3, 2], [2, 1]]
        assert hook_lengths((3, 1)) == [[4, 2, 1], [1]]

    def test_dimension_by_hook_formula(self):
        assert dimension((4,)) == 1
        assert dimension((2, 2)) == 2
        assert dimension((3, 1)) == 3
        assert dimension((1, 1, 1, 1)) == 1

    def test_standard_module_dimension(self):
        for n in range(2, 9):
            assert dimension((n - 1, 1)) == n - 1

    def test_dimension_squares_sum_to_group_order(self):
        for n in range(1, 9):
            total = sum(dimension(s) ** 2 for s in partitions_of(n))
            assert total == math.factorial(n)

    def test_conjugate_flips_dimension_invariantly(self):
        for s in partitions_of(6):
            assert dimension(conjugate_partition(s)) == dimension(s)


class TestCharacterValues:
    def test_frozen_degree_four_table(self):
        classes = partitions_of(4)
        for shape, row in TABLE_4.items():
            for cycles, expected in zip(classes, row):
                assert character_value(shape, cycles) == expected

    def test_frozen_degree_five_table(self):
        classes = partitions_of(5)
        for shape, row in TABLE_5.items():
            for cycles, expected in zip(classes, row):
                assert character_value(shape, cycles) == expected

    def test_oracle_table_degree_four(self):
        oracle = oracles.brute_force_character_table(4)
        for shape, row in oracle.items():
            assert TABLE_4[shape] == row

    def test_oracle_table_degree_five(self):
        oracle = oracles.brute_force_character_table(5)
        for shape, row in oracle.items():
            assert TABLE_5[shape] == row

    def test_trivial_character_is_constant_one(self):
        for n in range(1, 8):
            assert all(character_value((n,), c) == 1 for c in partitions_of(n))

    def test_standard_character_counts_fixed_points(self):
        # value on a class is (number of fixed points) - 1
        for n in range(2, 8):
            for cycles in partitions_of(n):
                expected = cycles.count(1) - 1
                assert character_value((n - 1, 1), cycles) == expected

    def test_sign_character(self):
        for n in range(2, 7):
            for cycles in partitions_of(n):
                parity = (-1) ** (n - len(cycles))
                assert character_value((1,) * n, cycles) == parity

    def test_conjugate_twists_by_sign(self):
        for shape in partitions_of(6):
            for cycles in partitions_of(6):
                lhs = character_value(conjugate_partition(shape), cycles)
                parity = (-1) ** (6 - len(cycles))
                assert lhs == parity * character_value(shape, cycles)

    def test_identity_column_is_dimension(self):
        for n in range(1, 8):
            for shape in partitions_of(n):
                assert character_value(shape, (1,) * n) == dimension(shape)

    def test_five_cycle_column(self):
        # hooks contribute a sign, everything else vanishes
        assert character_value((3, 2), (5,)) == 0
        assert character_value((2, 2, 1), (5,)) == 0
        assert character_value((3, 1, 1), (5,)) == 1
        assert character_value((2, 1, 1, 1), (5,)) == -1

    def test_n_cycle_character_closed_form(self):
        for n in range(2, 9):
            for shape in partitions_of(n):
                assert n_cycle_character(shape) == character_value(shape, (n,))

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            character_value((3, 1), (5,))


class TestTableObject:
    def test_row_and_column_layout(self):
        table = character_table(4)
        assert isinstance(table, CharacterTable)
        assert table.partitions == partitions_of(4)
        assert table.cycle_types == partitions_of(4)
        for shape, row in TABLE_4.items():
            got = tuple(table.value(shape, c) for c in table.cycle_types)
            assert got == row

    def test_orthogonality_small_degrees(self):
        for n in range(1, 7):
            table = character_table(n)
            assert check_row_orthogonality(table)
            assert check_column_orthogonality(table)

    def test_row_orthogonality_by_hand(self):
        # sum over classes of |C| * chi(C) * psi(C) is 0 or |G|
        table = character_table(5)
        for a in table.partitions:
            for b in table.partitions:
                total = sum(
                    class_size(c) * table.value(a, c) * table.value(b, c)
                    for c in table.cycle_types
                )
                assert total == (math.factorial(5) if a == b else 0)

    def test_character_norm_via_enumeration(self):
        # direct sum over all 120 group elements, no class bookkeeping
        for shape in ((3, 2), (2, 2, 1)):
            total = sum(
                character_value(shape, cycle_type(p)) ** 2
                for p in all_permutations(5)
            )
            assert total == math.factorial(5)

    def test_degree_cap(self):
        with pytest.raises(DegreeRangeError):
            character_table(MAX_TABLE_DEGREE + 1)


class TestCsv:
    def test_header_and_shape(self):
        text = table_to_csv(character_table(4))
        lines = text.strip().splitlines()
        assert len(lines) == 6
        assert lines[0].startswith("partition/cycle_type")

    def test_standard_row_rendering(self):
        text = table_to_csv(character_table(4))
        assert '"3,1",-1,0,-1,1,3' in text

    def test_round_trip_against_values(self):
        table = character_table(5)
        rows = list(csv.reader(io.StringIO(table_to_csv(table))))
        header, body = rows[0], rows[1:]
        assert header[1:] == [",".join(str(k) for k in c) for c in table.cycle_types]
        for row, shape in zip(body, table.partitions):
            assert row[0] == ",".join(str(k) for k in shape)
            values = tuple(int(tok) for tok in row[1:])
            assert values == tuple(table.value(shape, c) for c in table.cycle_types)
