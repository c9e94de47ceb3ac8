"""Partitions, Ferrers diagrams and alpha-deformed hook lengths.

A :class:`Partition` is an immutable tuple of positive integers in
non-increasing order.  Trailing zeros are stripped on construction, so
``Partition((2, 1, 0)) == Partition((2, 1))``; callers that need the
fixed-length vector of ``m`` entries use :meth:`Partition.padded`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import CellOutOfDiagram, NonPositiveAlpha, NotAPartition
from .exact import RationalLike, as_rational


class Cell(NamedTuple):
    row: int
    col: int


class Partition(tuple):
    """Non-increasing sequence of positive integers (canonical form)."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise NotAPartition(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise NotAPartition(f"{parts} is not non-increasing")
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        return super().__new__(cls, parts[:end])

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    @property
    def size(self) -> int:
        """Degree |sigma|."""
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part ``sigma_i``; zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def padded(self, m: int) -> tuple[int, ...]:
        if len(self) > m:
            raise NotAPartition(f"{self} has more than {m} parts")
        return tuple(self) + (0,) * (m - len(self))

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p >= j) for j in range(1, self[0] + 1))

    def column_length(self, j: int) -> int:
        """Number of cells in column ``j`` (1-based)."""
        return sum(1 for p in self if p >= j)

    def cells(self) -> Iterator[Cell]:
        for i, p in enumerate(self, start=1):
            for j in range(1, p + 1):
                yield Cell(i, j)

    def has_cell(self, cell: Cell | tuple[int, int]) -> bool:
        i, j = cell
        return 1 <= i <= len(self) and 1 <= j <= self[i - 1]

    def contains(self, other: "Partition") -> bool:
        """Diagram containment ``other ⊆ self``."""
        other = Partition(other)
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def dominates(self, other: "Partition") -> bool:
        """``other ⊴ self`` in dominance order (same degree required)."""
        other = Partition(other)
        if other.size != self.size:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.part(i + 1)
            b += other.part(i + 1)
            if b > a:
                return False
        return True

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def contiguous_indices(self, max_length: int | None = None) -> list[int]:
        """Rows ``i`` for which ``sigma^i`` is again a partition."""
        top = len(self) + 1
        if max_length is not None:
            top = min(top, max_length)
        return [i for i in range(1, top + 1) if i == 1 or self[i - 2] > self.part(i)]


def _check_alpha(alpha: RationalLike) -> Fraction:
    a = as_rational(alpha)
    if a <= 0:
        raise NonPositiveAlpha(f"alpha must be positive, got {a}")
    return a


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int, max_len: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_len - 1):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(degree: int, max_length: int) -> list[Partition]:
    """All partitions of ``degree`` with at most ``max_length`` parts.

    Output is in decreasing lexicographic order, which refines the reverse
    dominance order: a partition always precedes everything it dominates.
    """
    if degree < 0 or max_length < 0:
        raise ValueError("degree and max_length must be non-negative")
    return [Partition(p) for p in _partitions(degree, degree, max_length)]


def partitions_up_to(max_degree: int, max_length: int) -> list[Partition]:
    """Graded enumeration: degree 0, 1, ..., ``max_degree``."""
    return [p for k in range(max_degree + 1) for p in enumerate_partitions(k, max_length)]


def contiguous(sigma: Partition, i: int) -> Partition:
    """The i-th contiguous partition (row ``i`` incremented by one)."""
    sigma = Partition(sigma)
    if i < 1 or i > len(sigma) + 1:
        raise NotAPartition(f"row {i} out of range for {sigma}")
    if i > 1 and sigma[i - 2] == sigma.part(i):
        raise NotAPartition(f"incrementing row {i} of {sigma} breaks monotonicity")
    parts = list(sigma.padded(max(len(sigma), i)))
    parts[i - 1] += 1
    return Partition(parts)


def arm_leg(sigma: Partition, s: Cell | tuple[int, int]) -> tuple[int, int]:
    sigma = Partition(sigma)
    i, j = s
    if not sigma.has_cell((i, j)):
        raise CellOutOfDiagram(f"cell {(i, j)} not in {sigma}")
    return sigma[i - 1] - j, sigma.column_length(j) - i


def hooks(sigma: Partition, s: Cell | tuple[int, int], alpha: RationalLike) -> tuple[Fraction, Fraction]:
    """(upper, lower) hook lengths ``l + alpha(1 + a)`` and ``l + 1 + alpha a``."""
    a_ = _check_alpha(alpha)
    arm, leg = arm_leg(sigma, s)
    return leg + a_ * (1 + arm), leg + 1 + a_ * arm


def j_constant(sigma: Partition, alpha: RationalLike) -> Fraction:
    """Product of all upper hooks times all lower hooks of ``sigma``."""
    a_ = _check_alpha(alpha)
    sigma = Partition(sigma)
    out = Fraction(1)
    for s in sigma.cells():
        upper, lower = hooks(sigma, s, a_)
        out *= upper * lower
    return out
