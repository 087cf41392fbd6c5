"""Symmetric group basics: permutations, partitions, cycle types, conjugacy classes.

Permutations act on the points 1..n and are stored in one-line notation, so
``p.images[i-1]`` is the image of ``i``.  Composition is ``compose(p, q)(i) =
p(q(i))``.  All counting is done with Python integers, which never overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import DegreeRangeError

Partition = tuple[int, ...]
CycleType = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise ValueError("a permutation needs degree at least 1")
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} outside 1..{self.degree}")
        return self.images[point - 1]

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.images)


def identity(n: int) -> Permutation:
    if n < 1:
        raise DegreeRangeError("degree must be at least 1")
    return Permutation(tuple(range(1, n + 1)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation mapping i to p(q(i))."""
    if p.degree != q.degree:
        raise ValueError("degrees differ")
    pi = p.images
    return Permutation(tuple(pi[v - 1] for v in q.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, v in enumerate(p.images, start=1):
        out[v - 1] = i
    return Permutation(tuple(out))


def fixed_points(p: Permutation) -> int:
    return sum(1 for i, v in enumerate(p.images, start=1) if i == v)


def agreements(p: Permutation, q: Permutation) -> int:
    """Number of points where p and q agree."""
    if p.degree != q.degree:
        raise ValueError("degrees differ")
    return sum(1 for a, b in zip(p.images, q.images) if a == b)


def cycle_type(p: Permutation) -> CycleType:
    """Multiset of cycle lengths, sorted descending."""
    return cycle_type_of_images(p.images)


def cycle_type_of_images(images: tuple[int, ...]) -> CycleType:
    n = len(images)
    seen = [False] * (n + 1)
    lengths = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j - 1]
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def parse_one_line(text: str) -> Permutation:
    """Parse one-line notation like "4,3,1,2"."""
    try:
        images = tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ValueError(f"bad one-line permutation {text!r}") from exc
    return Permutation(images)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation like "(1,4,2,3)" or "(1,2)(3,4)".

    Points absent from every cycle are fixed; the degree must be given because
    it cannot be inferred from the cycles alone.
    """
    images = list(range(1, degree + 1))
    body = text.replace(" ", "")
    if body.count("(") != body.count(")"):
        raise ValueError(f"unbalanced cycle notation {text!r}")
    moved: set[int] = set()
    pos = 0
    while pos < len(body):
        if body[pos] != "(":
            raise ValueError(f"bad cycle notation {text!r}")
        end = body.index(")", pos)
        points = [int(tok) for tok in body[pos + 1 : end].split(",") if tok]
        if len(points) != len(set(points)):
            raise ValueError(f"repeated point inside a cycle in {text!r}")
        for pt in points:
            if not 1 <= pt <= degree:
                raise ValueError(f"point {pt} outside 1..{degree}")
            if pt in moved:
                raise ValueError(f"point {pt} appears in two cycles in {text!r}")
            moved.add(pt)
        for i, pt in enumerate(points):
            images[pt - 1] = points[(i + 1) % len(points)]
        pos = end + 1
    return Permutation(tuple(images))


def rank_permutation(p: Permutation) -> int:
    """Position of p among all degree-n permutations in lexicographic order."""
    images = p.images
    n = p.degree
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if images[j] < images[i])
        rank += smaller * factorial(n - 1 - i)
    return rank


def unrank_permutation(rank: int, n: int) -> Permutation:
    """Inverse of rank_permutation for degree n."""
    if n < 1:
        raise DegreeRangeError("degree must be at least 1")
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} outside 0..{factorial(n) - 1}")
    available = list(range(1, n + 1))
    images = []
    for i in range(n):
        f = factorial(n - 1 - i)
        idx, rank = divmod(rank, f)
        images.append(available.pop(idx))
    return Permutation(tuple(images))


def all_permutations(n: int):
    """Yield every degree-n permutation in rank (lexicographic) order."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order: (n,) first, (1,)*n last."""
    if n < 1:
        raise ValueError("partitions are defined for n >= 1")
    out = []
    parts = [n]
    while True:
        out.append(tuple(parts))
        k = len(parts) - 1
        while k >= 0 and parts[k] == 1:
            k -= 1
        if k < 0:
            break
        redistribute = len(parts) - 1 - k + 1
        value = parts[k] - 1
        parts = parts[:k] + [value]
        while redistribute > 0:
            chunk = min(value, redistribute)
            parts.append(chunk)
            redistribute -= chunk
    return tuple(out)


def partition_depth(shape: Partition) -> int:
    """Number of boxes outside the first row."""
    return sum(shape) - shape[0]


def class_size(shape: CycleType) -> int:
    """Size of the conjugacy class of S(n) with the given cycle type."""
    n = sum(shape)
    denom = 1
    mult: dict[int, int] = {}
    for part in shape:
        if part < 1:
            raise ValueError(f"bad cycle type {shape}")
        mult[part] = mult.get(part, 0) + 1
    for length, m in mult.items():
        denom *= length**m * factorial(m)
    return factorial(n) // denom


def class_representative(shape: CycleType) -> Permutation:
    """Canonical member of the class: cycles laid out on consecutive points."""
    images = []
    start = 1
    for part in shape:
        block = list(range(start, start + part))
        images.extend(block[1:] + block[:1])
        start += part
    return Permutation(tuple(images))


@dataclass(frozen=True)
class ClassInfo:
    """One conjugacy class of S(n)."""

    cycle_type: CycleType
    size: int
    representative: Permutation

    @property
    def fixed_points(self) -> int:
        return sum(1 for part in self.cycle_type if part == 1)


@lru_cache(maxsize=None)
def conjugacy_classes(n: int) -> tuple[ClassInfo, ...]:
    """All classes of S(n), ordered like partitions_of(n)."""
    out = []
    for shape in partitions_of(n):
        out.append(ClassInfo(shape, class_size(shape), class_representative(shape)))
    return tuple(out)


def classes_with_few_fixed_points(n: int, t: int) -> tuple[ClassInfo, ...]:
    """Non-identity classes whose members fix at most t points."""
    if not 0 <= t < n:
        raise ValueError(f"need 0 <= t < n, got t={t}, n={n}")
    out = []
    for cls in conjugacy_classes(n):
        if cls.cycle_type == (1,) * n:
            continue
        if cls.fixed_points <= t:
            out.append(cls)
    return tuple(out)


@lru_cache(maxsize=None)
def derangement_count(n: int) -> int:
    """Number of fixed-point-free permutations of 1..n."""
    if n < 1:
        raise DegreeRangeError("degree must be at least 1")
    if n == 1:
        return 0
    if n == 2:
        return 1
    return (n - 1) * (derangement_count(n - 1) + derangement_count(n - 2))
