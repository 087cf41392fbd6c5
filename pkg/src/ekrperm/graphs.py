"""Agreement graphs on symmetric groups: cliques, cocliques, exhaustive search.

Vertices are the permutations of 1..n; two are adjacent in the threshold-t
graph when they agree in at most t points.  At t=0 this is the derangement
graph.  Cliques of size n come from Latin squares and from decompositions of
the complete digraph into directed Hamilton cycles; cliques of size n(n-1) in
the threshold-1 graph come from the affine maps of a finite field.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import (
    DegreeRangeError,
    FamilyValidationError,
    UnsupportedConstructionError,
)
from .permgroup import (
    Permutation,
    agreements,
    classes_with_few_fixed_points,
    derangement_count,
    identity,
    parse_one_line,
    rank_permutation,
)
from .scheme import MAX_DENSE_DEGREE, group_data


@dataclass(frozen=True)
class PermutationGraph:
    """The agreement-at-most-t graph, dense below 7 points and implicit above."""

    n: int
    t: int
    degree: int
    dense: bool

    def adjacent(self, p: Permutation, q: Permutation) -> bool:
        if p.degree != self.n or q.degree != self.n:
            raise ValueError("degree mismatch")
        return p.images != q.images and agreements(p, q) <= self.t

    def adjacency_masks(self) -> list[int]:
        """Bitmask neighbourhoods indexed by permutation rank (dense mode only)."""
        if not self.dense:
            raise DegreeRangeError(
                f"explicit adjacency stops at degree {MAX_DENSE_DEGREE}"
            )
        return _adjacency_masks(self.n, self.t)


@lru_cache(maxsize=None)
def _adjacency_masks(n: int, t: int) -> list[int]:
    gd = group_data(n)
    fixed_by_class = [cls.fixed_points for cls in gd.classes]
    identity_class = gd.class_index[(1,) * n]
    connection = [
        j
        for j in range(gd.order)
        if gd.type_of[j] != identity_class and fixed_by_class[gd.type_of[j]] <= t
    ]
    masks = []
    for row in gd.mult:
        mask = 0
        for g in connection:
            mask |= 1 << row[g]
        masks.append(mask)
    return masks


def build_graph(n: int, t: int = 0) -> PermutationGraph:
    if n < 2:
        raise DegreeRangeError("graphs need degree at least 2")
    if not 0 <= t < n - 1:
        raise ValueError(f"need 0 <= t < n-1, got t={t}, n={n}")
    degree = sum(cls.size for cls in classes_with_few_fixed_points(n, t))
    return PermutationGraph(n=n, t=t, degree=degree, dense=n <= MAX_DENSE_DEGREE)


def validate_clique(members, t: int = 0) -> tuple[bool, tuple | None]:
    """Pairwise agreement check; returns (ok, witness pair or None)."""
    members = list(members)
    for i, p in enumerate(members):
        for q in members[i + 1 :]:
            if p.images == q.images or agreements(p, q) > t:
                return False, (p, q)
    return True, None


def validate_family(members, t: int = 0) -> tuple[bool, tuple | None]:
    """Check that all pairs agree in more than t points (an independent set)."""
    members = list(members)
    for i, p in enumerate(members):
        for q in members[i + 1 :]:
            if p.images == q.images or agreements(p, q) <= t:
                return False, (p, q)
    return True, None


@dataclass(frozen=True)
class CliqueCertificate:
    """A validated clique in the threshold-t graph."""

    n: int
    t: int
    construction: str
    members: tuple[Permutation, ...]
    validated: bool

    @property
    def size(self) -> int:
        return len(self.members)


def _certify(members, n, t, construction) -> CliqueCertificate:
    ok, witness = validate_clique(members, t)
    if not ok:
        raise FamilyValidationError(
            f"{construction} produced a non-clique: {witness[0]} vs {witness[1]}"
        )
    return CliqueCertificate(
        n=n, t=t, construction=construction, members=tuple(members), validated=True
    )


def latin_clique(n: int) -> CliqueCertificate:
    """Rows of the cyclic Latin square: row k sends i to i+k mod n."""
    if n < 2:
        raise DegreeRangeError("need degree at least 2")
    rows = []
    for k in range(n):
        rows.append(
            Permutation(tuple((i - 1 + k) % n + 1 for i in range(1, n + 1)))
        )
    return _certify(rows, n, 0, "cyclic-latin")


def _complete_latin_square(rows: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Extend a Latin rectangle to a full square, one row per perfect matching."""
    rows = list(rows)
    while len(rows) < n:
        missing = [set(range(1, n + 1)) - {row[c] for row in rows} for c in range(n)]
        match_col: dict[int, int] = {}  # symbol -> column
        match_sym: dict[int, int] = {}  # column -> symbol

        def try_assign(col: int, seen: set[int]) -> bool:
            for sym in sorted(missing[col]):
                if sym in seen:
                    continue
                seen.add(sym)
                if sym not in match_col or try_assign(match_col[sym], seen):
                    match_col[sym] = col
                    match_sym[col] = sym
                    return True
            return False

        for col in range(n):
            if not try_assign(col, set()):
                raise AssertionError("Latin rectangle completion failed")
        rows.append(tuple(match_sym[col] for col in range(n)))
    return rows


def odd_n_latin_clique(n: int) -> CliqueCertificate:
    """Latin-square clique for odd n whose second row is an odd permutation.

    First row is the identity; second sends 1,2,3,4,...,n to
    2,1,n,3,...,n-1; remaining rows are filled in by repeated perfect
    matchings between columns and unused symbols.
    """
    if n < 5 or n % 2 == 0:
        raise UnsupportedConstructionError(
            f"the prescribed-row Latin clique needs odd degree >= 5, got {n}"
        )
    first = tuple(range(1, n + 1))
    second = (2, 1, n) + tuple(range(3, n - 1 + 1))
    assert sorted(second) == list(first)
    square = _complete_latin_square([first, second], n)
    members = [Permutation(row) for row in square]
    return _certify(members, n, 0, "odd-latin")


def _walecki_cycles(n: int) -> list[list[int]]:
    """Directed Hamilton cycle decomposition of the complete digraph, odd n.

    The classical zigzag path on the ring 0..n-2 plus a hub vertex gives
    (n-1)/2 edge-disjoint undirected Hamilton cycles; traversing each in both
    directions yields n-1 arc-disjoint directed cycles.
    """
    m = (n - 1) // 2
    ring = n - 1
    base = [0]
    for i in range(1, m):
        base.extend([i, ring - i])
    base.append(m)
    cycles = []
    for j in range(m):
        seq = [n] + [(x + j) % ring + 1 for x in base]
        cycles.append(seq)
        cycles.append([seq[0]] + seq[1:][::-1])
    return cycles


class _SearchBudget(Exception):
    pass


def _search_decomposition(n: int) -> list[list[int]]:
    """Backtracking search for n-1 arc-disjoint directed Hamilton cycles."""
    wanted = n - 1
    for attempt in range(64):
        rng = random.Random(1009 * n + attempt)
        used = [[False] * (n + 1) for _ in range(n + 1)]
        cycles: list[list[int]] = []
        steps = 0
        budget = 400_000

        def close_cycle() -> bool:
            nonlocal steps
            if len(cycles) == wanted:
                return True
            path = [1]
            on_path = {1}

            def extend() -> bool:
                nonlocal steps
                steps += 1
                if steps > budget:
                    raise _SearchBudget
                u = path[-1]
                if len(path) == n:
                    if used[u][1]:
                        return False
                    used[u][1] = True
                    cycles.append(path.copy())
                    if close_cycle():
                        return True
                    cycles.pop()
                    used[u][1] = False
                    return False
                nbrs = [
                    v for v in range(1, n + 1) if v not in on_path and not used[u][v]
                ]
                rng.shuffle(nbrs)
                for v in nbrs:
                    used[u][v] = True
                    path.append(v)
                    on_path.add(v)
                    if extend():
                        return True
                    used[u][v] = False
                    path.pop()
                    on_path.remove(v)
                return False

            return extend()

        try:
            if close_cycle():
                return cycles
        except _SearchBudget:
            continue
    raise UnsupportedConstructionError(
        f"no Hamilton decomposition found at degree {n} within the search budget"
    )


def cycle_decomposition_clique(n: int) -> CliqueCertificate:
    """Identity plus the n-1 successor permutations of a Hamilton decomposition.

    The complete digraph on n vertices splits into n-1 directed Hamilton
    cycles for every n >= 3 except 4 and 6.  Arc-disjointness makes the n
    successor maps pairwise agree nowhere.
    """
    if n < 3:
        raise DegreeRangeError("need degree at least 3")
    if n in (4, 6):
        raise UnsupportedConstructionError(
            f"the complete digraph on {n} vertices has no Hamilton decomposition"
        )
    if n % 2 == 1:
        cycles = _walecki_cycles(n)
    elif n <= 8:
        cycles = _search_decomposition(n)
    else:
        raise UnsupportedConstructionError(
            "search-based decomposition stops at degree 8 for even degrees"
        )
    arcs_seen: set[tuple[int, int]] = set()
    members = [identity(n)]
    for seq in cycles:
        images = [0] * n
        for idx, v in enumerate(seq):
            successor = seq[(idx + 1) % n]
            images[v - 1] = successor
            arc = (v, successor)
            if arc in arcs_seen:
                raise AssertionError(f"arc {arc} reused across cycles")
            arcs_seen.add(arc)
        members.append(Permutation(tuple(images)))
    if len(arcs_seen) != n * (n - 1):
        raise AssertionError("decomposition does not cover every arc")
    return _certify(members, n, 0, "hamilton-decomposition")


# Irreducible polynomials (little-endian coefficient lists) for the three
# prime-power fields small enough to matter here.
_FIELD_POLYS = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}
_AFFINE_SIZES = (2, 3, 4, 5, 7, 8, 9, 11, 13)


class _Field:
    """Arithmetic tables for GF(q), q prime or one of 4, 8, 9."""

    def __init__(self, q: int):
        if q in _FIELD_POLYS:
            p, poly = _FIELD_POLYS[q]
            k = len(poly) - 1
            self.q = q

            def to_coeffs(a: int) -> list[int]:
                out = []
                for _ in range(k):
                    a, r = divmod(a, p)
                    out.append(r)
                return out

            def from_coeffs(cs) -> int:
                value = 0
                for c in reversed(cs):
                    value = value * p + c
                return value

            def mul(a: int, b: int) -> int:
                ca, cb = to_coeffs(a), to_coeffs(b)
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(ca):
                    for j, y in enumerate(cb):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for deg in range(2 * k - 2, k - 1, -1):
                    coeff = prod[deg]
                    if coeff:
                        prod[deg] = 0
                        for j in range(k):
                            prod[deg - k + j] = (prod[deg - k + j] - coeff * poly[j]) % p
                return from_coeffs(prod[:k])

            def add(a: int, b: int) -> int:
                ca, cb = to_coeffs(a), to_coeffs(b)
                return from_coeffs([(x + y) % p for x, y in zip(ca, cb)])

            self.add = add
            self.mul = mul
        else:
            for d in range(2, q):
                if q % d == 0:
                    raise UnsupportedConstructionError(f"{q} is not a prime power here")
            self.q = q
            self.add = lambda a, b: (a + b) % q
            self.mul = lambda a, b: (a * b) % q


def affine_clique(q: int) -> CliqueCertificate:
    """The q(q-1) maps x -> a*x + b over GF(q) as a clique at threshold 1.

    Two distinct affine maps agree in at most one point, so the family is a
    clique in the agreement-at-most-1 graph on q points.
    """
    if q not in _AFFINE_SIZES:
        raise UnsupportedConstructionError(
            f"affine cliques are built for q in {_AFFINE_SIZES}, got {q}"
        )
    field = _Field(q)
    members = []
    for a in range(1, q):
        for b in range(q):
            images = tuple(field.add(field.mul(a, x), b) + 1 for x in range(q))
            members.append(Permutation(images))
    if len(set(members)) != q * (q - 1):
        raise AssertionError("affine maps are not distinct")
    return _certify(members, q, 1, "affine")


@dataclass(frozen=True)
class Family:
    """All permutations sending x to y for every constraint pair (x, y)."""

    n: int
    constraints: tuple[tuple[int, int], ...]
    members: tuple[Permutation, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def family(constraints, n: int) -> Family:
    """Build the family of permutations satisfying the given position constraints."""
    pairs = tuple(sorted((int(x), int(y)) for x, y in constraints))
    if not 1 <= len(pairs) < n:
        raise ValueError(f"need between 1 and {n - 1} constraints, got {len(pairs)}")
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    for v in xs + ys:
        if not 1 <= v <= n:
            raise ValueError(f"constraint value {v} outside 1..{n}")
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise ValueError(f"conflicting constraints: {pairs}")
    free_positions = [i for i in range(1, n + 1) if i not in set(xs)]
    free_values = [v for v in range(1, n + 1) if v not in set(ys)]
    members = []
    for assignment in itertools.permutations(free_values):
        images = [0] * n
        for x, y in pairs:
            images[x - 1] = y
        for pos, val in zip(free_positions, assignment):
            images[pos - 1] = val
        members.append(Permutation(tuple(images)))
    members.sort(key=lambda p: p.images)
    return Family(n=n, constraints=pairs, members=tuple(members))


def all_point_families(n: int) -> dict[tuple[int, int], Family]:
    """The n^2 families fixing a single position-value pair."""
    return {(i, j): family([(i, j)], n) for i in range(1, n + 1) for j in range(1, n + 1)}


@dataclass(frozen=True)
class EquitableQuotient:
    """Edge counts between a point-stabilizing family and its complement."""

    n: int
    matrix: tuple[tuple[int, int], tuple[int, int]]
    eigenvalues: tuple[int, int]
    cell_sizes: tuple[int, int]
    equitable: bool
    matches_closed_form: bool


def equitable_quotient(n: int) -> EquitableQuotient:
    """Quotient of the derangement graph over {maps fixing n, the rest}.

    Edge counts are taken directly: a neighbour pi*g of pi fixes n exactly
    when g(n) = pi^-1(n), so counting derangements by their image of n gives
    every vertex's count into the first cell.  Equitability is confirmed by
    those counts being constant on each cell.
    """
    if n < 2:
        raise DegreeRangeError("need degree at least 2")
    counts = [0] * (n + 1)  # counts[w] = derangements sending n to w
    total = 0
    for images in itertools.permutations(range(1, n + 1)):
        if any(images[i] == i + 1 for i in range(n)):
            continue
        counts[images[n - 1]] += 1
        total += 1
    d = derangement_count(n)
    if total != d:
        raise AssertionError("derangement enumeration disagrees with the recursion")
    if counts[n] != 0:
        raise AssertionError("a derangement fixed the last point")
    off_cell = set(counts[1:n])
    equitable = len(off_cell) == 1
    if not equitable:
        raise AssertionError(f"quotient is not equitable: counts {counts[1:n]}")
    q = counts[1]
    matrix = ((0, d), (q, d - q))
    # Eigenvalues of [[0, d], [q, d-q]] are d and -q, by trace and determinant.
    eigenvalues = (d, -q)
    assert d + (-q) == matrix[0][0] + matrix[1][1]
    assert d * (-q) == matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    matches_closed_form = q * (n - 1) == d
    return EquitableQuotient(
        n=n,
        matrix=matrix,
        eigenvalues=eigenvalues,
        cell_sizes=(factorial(n - 1), factorial(n) - factorial(n - 1)),
        equitable=equitable,
        matches_closed_form=matches_closed_form,
    )


def latin_coset_cover(n: int) -> list[tuple[int, ...]]:
    """Right cosets of the cyclic Latin clique: a partition into n!/n cliques."""
    gd = group_data(n)
    clique_ranks = [
        gd.index[p.images] for p in latin_clique(n).members
    ]
    assigned = [False] * gd.order
    mult = gd.mult
    cosets = []
    for v in range(gd.order):
        if assigned[v]:
            continue
        coset = tuple(sorted(mult[r][v] for r in clique_ranks))
        for w in coset:
            if assigned[w]:
                raise AssertionError("cosets overlap")
            assigned[w] = True
        cosets.append(coset)
    if len(cosets) != gd.order // n:
        raise AssertionError("coset count is off")
    return cosets


@dataclass(frozen=True)
class SearchResult:
    """Exhaustive catalogue of the maximum independent sets at threshold 0."""

    n: int
    t: int
    alpha: int
    omega: int
    sets: tuple[tuple[Permutation, ...], ...]

    @property
    def count(self) -> int:
        return len(self.sets)

    @property
    def tight(self) -> bool:
        return self.alpha * self.omega == factorial(self.n)


def _enumerate_transversals(
    coset_masks: list[int], nonadj: list[int], allowed: int, chosen: tuple[int, ...]
) -> list[tuple[int, ...]]:
    """All ways to pick one pairwise-nonadjacent vertex from every coset."""
    if not coset_masks:
        return [chosen]
    best_idx = None
    best_candidates = None
    best_count = None
    for idx, mask in enumerate(coset_masks):
        candidates = mask & allowed
        count = candidates.bit_count()
        if count == 0:
            return []
        if best_count is None or count < best_count:
            best_idx, best_candidates, best_count = idx, candidates, count
            if count == 1:
                break
    rest = coset_masks[:best_idx] + coset_masks[best_idx + 1 :]
    out = []
    candidates = best_candidates
    while candidates:
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        out.extend(
            _enumerate_transversals(rest, nonadj, allowed & nonadj[v], chosen + (v,))
        )
    return out


def _search_branch(args) -> list[tuple[int, ...]]:
    coset_masks, nonadj, allowed, chosen = args
    return _enumerate_transversals(coset_masks, nonadj, allowed, chosen)


def max_independent_sets(n: int, t: int = 0, workers: int = 1) -> SearchResult:
    """Exhaustively enumerate the maximum independent sets of the derangement graph.

    The right cosets of the cyclic Latin clique partition the vertices into
    n!/n cliques, so no independent set beats (n-1)!; the family fixing the
    last point reaches it.  Every maximum set therefore picks exactly one
    vertex per coset, and those transversals are enumerated completely.
    """
    if t != 0:
        raise UnsupportedConstructionError("exhaustive search is implemented for t=0")
    if not 2 <= n <= MAX_DENSE_DEGREE:
        raise DegreeRangeError(
            f"exhaustive search is supported for 2 <= n <= {MAX_DENSE_DEGREE}"
        )
    gd = group_data(n)
    masks = _adjacency_masks(n, 0)
    full = (1 << gd.order) - 1
    nonadj = [full & ~m for m in masks]
    cosets = latin_coset_cover(n)
    coset_masks = []
    for coset in cosets:
        mask = 0
        for v in coset:
            mask |= 1 << v
        coset_masks.append(mask)
    seed = family([(n, n)], n)
    ok, witness = validate_family(seed.members, 0)
    if not ok:
        raise AssertionError(f"seed family is not independent: {witness}")
    alpha = seed.size  # floor (n-1)! met; coset cover shows it is also a cap
    if workers > 1:
        found = _parallel_search(coset_masks, nonadj, full, workers)
    else:
        found = _enumerate_transversals(coset_masks, nonadj, full, ())
    sets = []
    for ranks in found:
        members = tuple(gd.permutation(r) for r in sorted(ranks))
        ok, witness = validate_family(members, 0)
        if not ok:
            raise AssertionError(f"search produced a dependent set: {witness}")
        sets.append(members)
    sets.sort(key=lambda ms: tuple(p.images for p in ms))
    if not any(tuple(p.images for p in s) == tuple(p.images for p in seed.members) for s in sets):
        raise AssertionError("the seed family was not rediscovered")
    return SearchResult(n=n, t=0, alpha=alpha, omega=n, sets=tuple(sets))


def _parallel_search(coset_masks, nonadj, full, workers) -> list[tuple[int, ...]]:
    from concurrent.futures import ProcessPoolExecutor

    first = coset_masks[0]
    rest = coset_masks[1:]
    tasks = []
    candidates = first & full
    while candidates:
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        tasks.append((rest, nonadj, full & nonadj[v], (v,)))
    found: list[tuple[int, ...]] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_search_branch, tasks):
            found.extend(chunk)
    return found


def write_family(members, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for p in members:
            fh.write(str(p) + "\n")


def read_family(path: str, n: int) -> list[Permutation]:
    members = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            p = parse_one_line(line)
            if p.degree != n:
                raise ValueError(f"expected degree {n}, found {p}")
            members.append(p)
    return members
