"""Ordinary character tables of symmetric groups.

Character values are computed by the Murnaghan-Nakayama border-strip
recursion, memoized on (shape, remaining cycle lengths).  Dimensions come from
the hook length formula.  Everything is an exact Python integer.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DegreeRangeError
from .permgroup import CycleType, Partition, partitions_of

# Table sizes grow like the partition count; the recursion is fine well past
# this, but larger degrees are outside the tested envelope.
MAX_TABLE_DEGREE = 12


def conjugate_partition(shape: Partition) -> Partition:
    if not shape:
        return ()
    out = []
    for j in range(shape[0]):
        out.append(sum(1 for part in shape if part > j))
    return tuple(out)


def hook_lengths(shape: Partition) -> list[list[int]]:
    conj = conjugate_partition(shape)
    return [
        [(row - j) + (conj[j] - i) - 1 for j in range(row)]
        for i, row in enumerate(shape)
    ]


def dimension(shape: Partition) -> int:
    """Dimension of the irreducible module labelled by shape (hook formula)."""
    n = sum(shape)
    product = 1
    for row in hook_lengths(shape):
        for h in row:
            product *= h
    return factorial(n) // product


def _validate_shape(shape: Partition) -> None:
    if not shape or any(a < 1 for a in shape):
        raise ValueError(f"bad partition {shape}")
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {shape}")


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: Partition, cycles: Partition) -> int:
    if not cycles:
        return 1 if not shape else 0
    if not shape:
        return 0
    strip = cycles[0]
    rest = cycles[1:]
    k = len(shape)
    beta = [shape[i] + k - 1 - i for i in range(k)]
    beta_set = set(beta)
    total = 0
    for i, b in enumerate(beta):
        nb = b - strip
        if nb < 0 or nb in beta_set:
            continue
        sign = -1 if sum(1 for c in beta if nb < c < b) % 2 else 1
        new_beta = sorted((nb if j == i else beta[j] for j in range(k)), reverse=True)
        new_shape = tuple(
            v for v in (new_beta[j] - (k - 1 - j) for j in range(k)) if v > 0
        )
        total += sign * _murnaghan_nakayama(new_shape, rest)
    return total


def character_value(shape: Partition, cycles: CycleType) -> int:
    """Irreducible character of shape evaluated on the class of cycle type cycles."""
    _validate_shape(shape)
    _validate_shape(cycles)
    if sum(shape) != sum(cycles):
        raise ValueError(f"size mismatch: {shape} vs {cycles}")
    return _murnaghan_nakayama(tuple(shape), tuple(sorted(cycles, reverse=True)))


def n_cycle_character(shape: Partition) -> int:
    """Character value on the single-n-cycle class: +-1 on hooks, 0 otherwise."""
    n = sum(shape)
    value = character_value(shape, (n,))
    assert value in (-1, 0, 1)
    is_hook = len(shape) == 1 or shape[1] == 1
    assert (value != 0) == is_hook
    return value


@dataclass(frozen=True)
class CharacterTable:
    """Square table of character values, rows and columns in partition order."""

    n: int
    partitions: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]

    @property
    def cycle_types(self) -> tuple[CycleType, ...]:
        return self.partitions

    def row_index(self, shape: Partition) -> int:
        return self.partitions.index(tuple(shape))

    def value(self, shape: Partition, cycles: CycleType) -> int:
        return self.values[self.row_index(shape)][self.partitions.index(tuple(cycles))]

    def dimension(self, shape: Partition) -> int:
        return self.value(shape, (1,) * self.n)


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    """Full character table of S(n); rows and columns in reverse-lex order."""
    if not 1 <= n <= MAX_TABLE_DEGREE:
        raise DegreeRangeError(
            f"character tables are supported for 1 <= n <= {MAX_TABLE_DEGREE}, got {n}"
        )
    parts = partitions_of(n)
    values = tuple(
        tuple(character_value(shape, cycles) for cycles in parts) for shape in parts
    )
    table = CharacterTable(n, parts, values)
    for shape in parts:
        assert table.dimension(shape) == dimension(shape)
    return table


def check_row_orthogonality(table: CharacterTable) -> bool:
    """First orthogonality relation, exactly, for every pair of rows."""
    from .permgroup import class_size

    order = factorial(table.n)
    sizes = [class_size(ct) for ct in table.partitions]
    for a, row_a in enumerate(table.values):
        for b, row_b in enumerate(table.values):
            total = sum(s * x * y for s, x, y in zip(sizes, row_a, row_b))
            if total != (order if a == b else 0):
                return False
    return True


def check_column_orthogonality(table: CharacterTable) -> bool:
    """Second orthogonality relation, exactly, for every pair of columns."""
    from .permgroup import class_size

    order = factorial(table.n)
    sizes = [class_size(ct) for ct in table.partitions]
    k = len(table.partitions)
    for a in range(k):
        for b in range(k):
            total = sum(row[a] * row[b] for row in table.values)
            expected = Fraction(order, sizes[a]) if a == b else 0
            if Fraction(total) != expected:
                return False
    return True


def table_to_csv(table: CharacterTable) -> str:
    """Render the table as CSV with partition labels on both axes."""

    def label(shape: Partition) -> str:
        return ",".join(str(part) for part in shape)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["partition/cycle_type"] + [label(ct) for ct in table.partitions])
    for shape, row in zip(table.partitions, table.values):
        writer.writerow([label(shape)] + [str(v) for v in row])
    return buf.getvalue()
