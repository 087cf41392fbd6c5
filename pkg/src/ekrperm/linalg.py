"""Exact linear algebra over the rationals.

Matrices are lists of equal-length rows with int or Fraction entries.  Ranks
come from fraction-free (Bareiss) elimination on an integer copy; reduced row
echelon form, kernels and solving use Fraction arithmetic.  A fast modular
elimination (exact integer arithmetic mod a prime) provides certified rank
lower bounds for large integer matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Rational = int | Fraction

_RANK_PRIMES = (2147483647, 2147483629)  # < 2**31, so modular products fit int64


def _as_integer_rows(rows) -> list[list[int]]:
    """Scale each row by its common denominator; rank and kernel are unchanged."""
    out = []
    for row in rows:
        denom = 1
        for v in row:
            if isinstance(v, Fraction):
                denom = lcm(denom, v.denominator)
        out.append([int(v * denom) for v in row])
    return out


def bareiss_rank(rows) -> int:
    """Rank over the rationals via fraction-free elimination."""
    if not rows:
        return 0
    m = _as_integer_rows(rows)
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, n_rows):
            factor = m[i][col]
            row_i = m[i]
            row_r = m[rank]
            for j in range(col, n_cols):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def gaussian_rank(rows) -> int:
    """Rank via plain Fraction elimination; an independent route to bareiss_rank."""
    _, pivots = rref(rows)
    return len(pivots)


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns, over Fraction."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def kernel_basis(rows) -> list[list[Fraction]]:
    """Basis of the right kernel; each vector is verified against the matrix."""
    if not rows:
        return []
    n_cols = len(rows[0])
    reduced, pivots = rref(rows)
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -reduced[r][free]
        basis.append(vec)
    for vec in basis:
        for row in rows:
            if sum(Fraction(a) * b for a, b in zip(row, vec)) != 0:
                raise AssertionError("kernel vector fails the defining equations")
    return basis


def solve(rows, rhs) -> list[Fraction] | None:
    """One exact solution of rows * x = rhs, or None when inconsistent."""
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    n_cols = len(rows[0])
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, col in enumerate(pivots):
        x[col] = reduced[r][n_cols]
    return x


def matvec(rows, vec) -> list[Fraction]:
    return [sum(Fraction(a) * b for a, b in zip(row, vec)) for row in rows]


def transpose(rows) -> list[list]:
    return [list(col) for col in zip(*rows)]


def gram_matrix(rows) -> list[list[int]]:
    """rows * rows^T for integer rows; rank(gram) = rank(rows) over the rationals."""
    return [[sum(a * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows]


def kron(a, b) -> list[list[int]]:
    out = []
    for row_a in a:
        for row_b in b:
            out.append([x * y for x in row_a for y in row_b])
    return out


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def complete_graph_matrix(n: int) -> list[list[int]]:
    """Adjacency matrix of the complete graph on n vertices."""
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def rank_mod_p(int_rows: list[list[int]], p: int) -> int:
    """Rank over the field of p elements; always a lower bound for rational rank."""
    import numpy as np

    if not int_rows:
        return 0
    a = np.array(int_rows, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    r = 0
    for col in range(n_cols):
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        pivot_row = r + int(nz[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :]
        column = below[:, col].copy()
        mask = column != 0
        if mask.any():
            below[mask] = (below[mask] - np.outer(column[mask], a[r])) % p
        r += 1
        if r == n_rows:
            break
    return r


def certified_rank(int_rows: list[list[int]], upper_bound: int | None = None):
    """Exact rank of an integer matrix, with a cheap certificate when possible.

    A nonzero r x r minor mod p proves rank >= r over the rationals.  When the
    caller supplies a proven upper bound that the modular rank meets, the rank
    is certified without big-integer work; otherwise fall back to fraction-free
    elimination.  Returns (rank, method).
    """
    best = max(rank_mod_p(int_rows, p) for p in _RANK_PRIMES)
    if upper_bound is not None:
        if best > upper_bound:
            raise AssertionError(
                f"modular rank {best} exceeds the proven upper bound {upper_bound}"
            )
        if best == upper_bound:
            return best, "modular-certificate"
    exact = bareiss_rank(int_rows)
    assert exact >= best
    return exact, "fraction-free-elimination"


def format_matrix(rows) -> str:
    """Plain-text exact format: 'R C' header, then rows of int or p/q entries."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    lines = [f"{n_rows} {n_cols}"]
    for row in rows:
        lines.append(" ".join(str(Fraction(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> list[list[Fraction]]:
    lines = [line for line in text.splitlines() if line.strip()]
    n_rows, n_cols = (int(tok) for tok in lines[0].split())
    rows = []
    for line in lines[1 : n_rows + 1]:
        row = [Fraction(tok) for tok in line.split()]
        if len(row) != n_cols:
            raise ValueError("row width disagrees with the header")
        rows.append(row)
    if len(rows) != n_rows:
        raise ValueError("row count disagrees with the header")
    return rows
