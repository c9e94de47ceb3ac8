"""Irreducible symmetric cones and the Wallach set of admissible shapes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidSize, NegativeShape
from .exact import RationalLike, as_rational


class Family(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNION = "quat"
    LORENTZ = "lorentz"
    OCTONION = "octonion"


_MATRIX_PEIRCE = {Family.REAL: 1, Family.COMPLEX: 2, Family.QUATERNION: 4}


@dataclass(frozen=True)
class ConeDescriptor:
    family: Family
    size: int
    rank: int
    peirce: int
    dim: int

    def __post_init__(self):
        if 2 * self.dim != 2 * self.rank + self.peirce * self.rank * (self.rank - 1):
            raise InvalidSize(f"dimension identity fails for {self}")

    @property
    def alpha(self) -> Fraction:
        """Jack parameter 2/d."""
        return Fraction(2, self.peirce)

    @property
    def is_matrix_family(self) -> bool:
        return self.family in _MATRIX_PEIRCE

    def invariants(self) -> tuple[int, int, int]:
        """(rank, Peirce invariant, dimension): equal for coinciding cones."""
        return self.rank, self.peirce, self.dim

    def label(self) -> str:
        return self.family.value if self.family is Family.OCTONION else f"{self.family.value}:{self.size}"


def make_cone(family: Family | str, size: int | None = None) -> ConeDescriptor:
    family = Family(family)
    if family is Family.OCTONION:
        if size not in (None, 3, 27):
            raise InvalidSize("the exceptional cone has rank 3 (dimension 27)")
        return ConeDescriptor(family, 3, 3, 8, 27)
    if size is None:
        raise InvalidSize(f"{family.value} cone needs a size")
    if family is Family.LORENTZ:
        if size < 3:
            raise InvalidSize("Lorentz cones need dimension n >= 3")
        return ConeDescriptor(family, size, 2, size - 2, size)
    if size < 1:
        raise InvalidSize("matrix size must be at least 1")
    d = _MATRIX_PEIRCE[family]
    return ConeDescriptor(family, size, size, d, size + d * size * (size - 1) // 2)


def parse_cone(text: str) -> ConeDescriptor:
    """Parse ``real:3``, ``complex:3``, ``quat:2``, ``lorentz:5`` or ``octonion``."""
    name, _, size = text.strip().lower().partition(":")
    try:
        family = Family(name)
    except ValueError as exc:
        raise InvalidSize(f"unknown cone family {name!r}") from exc
    if family is Family.OCTONION:
        return make_cone(family, int(size) if size else None)
    if not size:
        raise InvalidSize(f"cone {name!r} needs a size, e.g. {name}:3")
    return make_cone(family, int(size))


def wallach_points(cone: ConeDescriptor) -> list[Fraction]:
    """Discrete part {0, d/2, ..., d(r-2)/2}."""
    return [Fraction(cone.peirce * j, 2) for j in range(max(cone.rank - 1, 1))]


def wallach_threshold(cone: ConeDescriptor) -> Fraction:
    """Start d(r-1)/2 of the continuous part."""
    return Fraction(cone.peirce * (cone.rank - 1), 2)


def wallach_contains(cone: ConeDescriptor, beta: RationalLike) -> bool:
    b = as_rational(beta)
    if b < 0:
        raise NegativeShape(f"shape parameter must be non-negative, got {b}")
    if b >= wallach_threshold(cone):
        return True
    return (2 * b / cone.peirce).denominator == 1


def gindikin_contains(m: int, beta: RationalLike) -> bool:
    """Gindikin set {0, 1/2, ..., (m-2)/2} ∪ [(m-1)/2, ∞) for m x m real matrices."""
    b = as_rational(beta)
    if b < 0:
        raise NegativeShape(f"shape parameter must be non-negative, got {b}")
    if 2 * b >= m - 1:
        return True
    return any(b == Fraction(k, 2) for k in range(0, m - 1))
