"""The conjugacy-class association scheme of a symmetric group.

The scheme on S(n) has one class per cycle type; the common eigenspaces are
the isotypic components of the group algebra, one per partition of n, with
dimension dim(shape)^2.  Eigenvalues of a class graph are
size * chi(class) / chi(1), which are always integers here (enforced).

Vectors over the group are lists indexed by permutation rank.  Projections
onto an eigenspace are computed as convolutions with the character, grouped
by the cycle type of p^-1 q; nothing here ever touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .chartab import character_value, dimension
from .errors import DegreeRangeError, FamilyValidationError
from .permgroup import (
    ClassInfo,
    Partition,
    Permutation,
    agreements,
    classes_with_few_fixed_points,
    conjugacy_classes,
    cycle_type_of_images,
    derangement_count,
    rank_permutation,
)

# Dense per-group tables (multiplication by rank) stop being cheap past 6!.
MAX_DENSE_DEGREE = 6
MAX_GROUP_DEGREE = 8


class GroupData:
    """Rank-indexed tables for one symmetric group.

    perms[r] is the one-line tuple of the rank-r permutation, inv[r] the rank
    of its inverse and type_of[r] the index of its conjugacy class in the
    shared partition order.  The full multiplication table is built lazily and
    only for degrees up to MAX_DENSE_DEGREE.
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_GROUP_DEGREE:
            raise DegreeRangeError(
                f"group tables are supported for 1 <= n <= {MAX_GROUP_DEGREE}, got {n}"
            )
        self.n = n
        self.order = factorial(n)
        self.perms = list(itertools.permutations(range(1, n + 1)))
        self.index = {images: r for r, images in enumerate(self.perms)}
        self.inv = [0] * self.order
        for r, images in enumerate(self.perms):
            inv_images = [0] * n
            for i, v in enumerate(images, start=1):
                inv_images[v - 1] = i
            self.inv[r] = self.index[tuple(inv_images)]
        self.classes = conjugacy_classes(n)
        self.class_index = {cls.cycle_type: k for k, cls in enumerate(self.classes)}
        self.type_of = [
            self.class_index[cycle_type_of_images(images)] for images in self.perms
        ]
        self._mult: list[list[int]] | None = None

    @property
    def mult(self) -> list[list[int]]:
        """mult[a][b] = rank of (perm a composed with perm b)."""
        if self._mult is None:
            if self.n > MAX_DENSE_DEGREE:
                raise DegreeRangeError(
                    f"dense multiplication tables stop at degree {MAX_DENSE_DEGREE}"
                )
            index = self.index
            table = []
            for pa in self.perms:
                table.append([index[tuple(pa[v - 1] for v in pb)] for pb in self.perms])
            self._mult = table
        return self._mult

    def permutation(self, rank: int) -> Permutation:
        return Permutation(self.perms[rank])

    def rank_of(self, p: Permutation) -> int:
        return self.index[p.images]

    def characters_by_class(self, shape: Partition) -> list[int]:
        return [character_value(shape, cls.cycle_type) for cls in self.classes]


@lru_cache(maxsize=None)
def group_data(n: int) -> GroupData:
    return GroupData(n)


def class_eigenvalue(shape: Partition, cls: ClassInfo) -> int:
    """Eigenvalue of the class graph on the eigenspace of shape; always an integer."""
    value = Fraction(
        cls.size * character_value(shape, cls.cycle_type), dimension(shape)
    )
    if value.denominator != 1:
        raise AssertionError(
            f"class eigenvalue is not an integer: shape {shape}, class {cls.cycle_type}"
        )
    return int(value)


@dataclass(frozen=True)
class SchemeSpectrum:
    """Spectrum of a union of class graphs, one eigenvalue per partition."""

    n: int
    t: int
    partitions: tuple[Partition, ...]
    eigenvalues: tuple[int, ...]
    multiplicities: tuple[int, ...]
    valency: int

    def eigenvalue(self, shape: Partition) -> int:
        return self.eigenvalues[self.partitions.index(tuple(shape))]

    def least(self) -> tuple[int, tuple[Partition, ...]]:
        value = min(self.eigenvalues)
        achieved = tuple(
            shape
            for shape, ev in zip(self.partitions, self.eigenvalues)
            if ev == value
        )
        return value, achieved


def union_spectrum(n: int, t: int = 0) -> SchemeSpectrum:
    """Spectrum of the graph joining permutations that agree in at most t points."""
    if not 0 <= t < n:
        raise ValueError(f"need 0 <= t < n, got t={t}, n={n}")
    selected = classes_with_few_fixed_points(n, t)
    valency = sum(cls.size for cls in selected)
    parts = tuple(cls.cycle_type for cls in conjugacy_classes(n))
    eigenvalues = []
    multiplicities = []
    for shape in parts:
        eigenvalues.append(sum(class_eigenvalue(shape, cls) for cls in selected))
        multiplicities.append(dimension(shape) ** 2)
    assert sum(multiplicities) == factorial(n)
    assert eigenvalues[0] == valency  # trivial eigenspace carries the valency
    return SchemeSpectrum(
        n, t, parts, tuple(eigenvalues), tuple(multiplicities), valency
    )


def least_eigenvalue(n: int, t: int = 0) -> tuple[int, tuple[Partition, ...]]:
    return union_spectrum(n, t).least()


def ratio_bound(n: int, t: int = 0) -> Fraction:
    """Hoffman bound n!/(1 - valency/least) on independent sets, exactly."""
    spectrum = union_spectrum(n, t)
    tau, _ = spectrum.least()
    if tau >= 0:
        raise AssertionError("least eigenvalue should be negative")
    return Fraction(factorial(n)) / (1 - Fraction(spectrum.valency, tau))


def _scaled_integer_vector(x) -> tuple[list[int], int]:
    denom = 1
    for v in x:
        if isinstance(v, Fraction):
            denom = lcm(denom, v.denominator)
    return [int(v * denom) for v in x], denom


@dataclass(frozen=True)
class ProjectionResult:
    """Projection of a vector onto one eigenspace: nums/denom entrywise."""

    partition: Partition
    nums: tuple[int, ...]
    denom: int

    @property
    def vector(self) -> list[Fraction]:
        return [Fraction(v, self.denom) for v in self.nums]

    @property
    def norm_sq(self) -> Fraction:
        return Fraction(sum(v * v for v in self.nums), self.denom**2)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.nums)


def project(shape: Partition, x, n: int) -> ProjectionResult:
    """Apply the idempotent of shape to x by character convolution.

    Cost is n! * support(x) with O(1) class lookups at the dense degrees, so
    keep the degree at most MAX_DENSE_DEGREE for vectors with full support.
    """
    gd = group_data(n)
    if len(x) != gd.order:
        raise ValueError(f"vector length {len(x)} != {gd.order}")
    nums, denom = _scaled_integer_vector(x)
    support = [j for j, v in enumerate(nums) if v]
    chi = gd.characters_by_class(shape)
    dim = dimension(shape)
    out = [0] * gd.order
    if gd.n <= MAX_DENSE_DEGREE:
        mult = gd.mult
        type_of = gd.type_of
        inv = gd.inv
        for i in range(gd.order):
            row = mult[inv[i]]
            total = 0
            for j in support:
                total += chi[type_of[row[j]]] * nums[j]
            out[i] = total
    else:
        perms = gd.perms
        class_index = gd.class_index
        for i in range(gd.order):
            pi = perms[i]
            inv_images = [0] * gd.n
            for pos, v in enumerate(pi, start=1):
                inv_images[v - 1] = pos
            total = 0
            for j in support:
                pj = perms[j]
                composed = tuple(inv_images[v - 1] for v in pj)
                total += chi[class_index[cycle_type_of_images(composed)]] * nums[j]
            out[i] = total
    return ProjectionResult(
        tuple(shape), tuple(dim * v for v in out), gd.order * denom
    )


def adjacency_apply(nums: list[int], n: int, t: int = 0) -> list[int]:
    """Apply the agreement-at-most-t graph's adjacency operator to an integer vector."""
    gd = group_data(n)
    if gd.n > MAX_DENSE_DEGREE:
        raise DegreeRangeError("adjacency application needs the dense tables")
    fixed_by_class = [cls.fixed_points for cls in gd.classes]
    identity_class = gd.class_index[(1,) * n]
    connection = [
        j
        for j in range(gd.order)
        if gd.type_of[j] != identity_class and fixed_by_class[gd.type_of[j]] <= t
    ]
    mult = gd.mult
    return [sum(nums[row[g]] for g in connection) for row in mult]


def class_quadratic_forms(x, n: int) -> list[Fraction]:
    """x^T A_C x for every class C, via pairs in the support of x."""
    gd = group_data(n)
    if len(x) != gd.order:
        raise ValueError(f"vector length {len(x)} != {gd.order}")
    nums, denom = _scaled_integer_vector(x)
    support = [j for j, v in enumerate(nums) if v]
    acc = [0] * len(gd.classes)
    if gd.n <= MAX_DENSE_DEGREE:
        mult = gd.mult
        type_of = gd.type_of
        inv = gd.inv
        for a in support:
            row = mult[inv[a]]
            na = nums[a]
            for b in support:
                acc[type_of[row[b]]] += na * nums[b]
    else:
        perms = gd.perms
        class_index = gd.class_index
        for a in support:
            pa = perms[a]
            inv_images = [0] * gd.n
            for pos, v in enumerate(pa, start=1):
                inv_images[v - 1] = pos
            na = nums[a]
            for b in support:
                composed = tuple(inv_images[v - 1] for v in perms[b])
                acc[class_index[cycle_type_of_images(composed)]] += na * nums[b]
    d2 = denom * denom
    return [Fraction(v, d2) for v in acc]


def module_quadratic_form(
    shape: Partition, qforms: list[Fraction], n: int
) -> Fraction:
    """x^T E x from the class quadratic forms; equals |E x|^2 since E is idempotent."""
    gd = group_data(n)
    chi = gd.characters_by_class(shape)
    total = sum(c * q for c, q in zip(chi, qforms))
    value = Fraction(dimension(shape), gd.order) * total
    if value < 0:
        raise AssertionError("idempotent quadratic form must be nonnegative")
    return value


def fundamental_identity_check(x, y, n: int, t: int = 0) -> tuple[Fraction, Fraction]:
    """Both sides of the scheme identity linking class and eigenspace quadratic forms.

    Left: sum over classes (including the identity class) of
    x^T A_C x * y^T A_C y / (n! * |C|).  Right: sum over partitions of
    x^T E x * y^T E y / dim^2.  The identity itself does not depend on t.
    """
    if not 0 <= t < n:
        raise ValueError(f"need 0 <= t < n, got t={t}, n={n}")
    gd = group_data(n)
    qx = class_quadratic_forms(x, n)
    qy = class_quadratic_forms(y, n)
    order = gd.order
    lhs = sum(
        (a * b) / (order * cls.size) for a, b, cls in zip(qx, qy, gd.classes)
    )
    rhs = Fraction(0)
    for cls in gd.classes:
        shape = cls.cycle_type
        ex = module_quadratic_form(shape, qx, n)
        ey = module_quadratic_form(shape, qy, n)
        rhs += (ex * ey) / dimension(shape) ** 2
    return Fraction(lhs), Fraction(rhs)


def characteristic_vector(members, n: int) -> list[int]:
    """0/1 vector over permutation ranks for a set of permutations."""
    vec = [0] * factorial(n)
    for p in members:
        if p.degree != n:
            raise ValueError(f"degree mismatch: {p} in a degree-{n} vector")
        r = rank_permutation(p)
        if vec[r]:
            raise ValueError(f"repeated member {p}")
        vec[r] = 1
    return vec


def _check_pairwise(members, n, t, want_clique):
    members = list(members)
    for idx, p in enumerate(members):
        for q in members[idx + 1 :]:
            a = agreements(p, q)
            if p.images == q.images:
                raise FamilyValidationError(f"repeated member {p}")
            if want_clique and a > t:
                raise FamilyValidationError(
                    f"not a clique at threshold {t}: {p} and {q} agree on {a} points"
                )
            if not want_clique and a <= t:
                raise FamilyValidationError(
                    f"not independent at threshold {t}: {p} and {q} agree on {a} points"
                )
    return members


@dataclass(frozen=True)
class CliqueCocliqueReport:
    """Outcome of the clique-coclique product bound for one clique/coclique pair."""

    n: int
    t: int
    clique_size: int
    independent_size: int
    product: int
    bound: int
    tight: bool
    # For tight pairs (dense degrees only): per nontrivial partition, whether
    # the projections of the two characteristic vectors are nonzero.  At most
    # one of each pair may be nonzero when the bound is met with equality.
    supports: tuple[tuple[Partition, bool, bool], ...] | None
    corollary_ok: bool | None


def clique_coclique_check(
    clique, independent, n: int, t: int = 0
) -> CliqueCocliqueReport:
    """Validate both families and evaluate |C| * |S| <= n! with exact arithmetic."""
    clique = _check_pairwise(clique, n, t, want_clique=True)
    independent = _check_pairwise(independent, n, t, want_clique=False)
    product = len(clique) * len(independent)
    bound = factorial(n)
    tight = product == bound
    supports = None
    corollary_ok = None
    if tight and n <= MAX_DENSE_DEGREE:
        x = characteristic_vector(clique, n)
        y = characteristic_vector(independent, n)
        qx = class_quadratic_forms(x, n)
        qy = class_quadratic_forms(y, n)
        rows = []
        corollary_ok = True
        for cls in conjugacy_classes(n):
            shape = cls.cycle_type
            if shape == partitions_top(n):
                continue
            x_nonzero = module_quadratic_form(shape, qx, n) != 0
            y_nonzero = module_quadratic_form(shape, qy, n) != 0
            rows.append((shape, x_nonzero, y_nonzero))
            if x_nonzero and y_nonzero:
                corollary_ok = False
        supports = tuple(rows)
    return CliqueCocliqueReport(
        n=n,
        t=t,
        clique_size=len(clique),
        independent_size=len(independent),
        product=product,
        bound=bound,
        tight=tight,
        supports=supports,
        corollary_ok=corollary_ok,
    )


def partitions_top(n: int) -> Partition:
    """The one-row partition, labelling the trivial eigenspace."""
    return (n,)


def explicit_idempotent(shape: Partition, n: int) -> list[list[Fraction]]:
    """Dense idempotent matrix, for desk-checking at very small degrees."""
    if n > 5:
        raise DegreeRangeError("dense idempotents are for degree at most 5")
    gd = group_data(n)
    chi = gd.characters_by_class(shape)
    dim = dimension(shape)
    mult = gd.mult
    inv = gd.inv
    type_of = gd.type_of
    return [
        [Fraction(dim * chi[type_of[mult[inv[i]][j]]], gd.order) for j in range(gd.order)]
        for i in range(gd.order)
    ]
