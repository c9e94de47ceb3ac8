"""Exact rational scalars and small dense matrices over Q.

Matrices are tuples of row tuples of :class:`fractions.Fraction`.  Everything
here is pure and never rounds.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

from .errors import DimensionMismatch, InvalidParams

Matrix = Tuple[Tuple[Fraction, ...], ...]
RationalLike = Union[int, Fraction, str, float]


def as_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings may be ``"p/q"`` or decimal (``"0.75"``, ``"1e-6"``); decimals are
    read in base 10, so ``"0.1"`` is exactly 1/10.  Floats convert to the exact
    binary value they hold.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(Fraction(value))


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1,0,1/2"`` into a tuple of Fractions."""
    text = text.strip()
    if not text:
        return ()
    return tuple(as_rational(tok) for tok in text.split(","))


def to_matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix:
    mat = tuple(tuple(as_rational(x) for x in row) for row in rows)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise DimensionMismatch("matrix must be square")
    return mat


def identity(n: int, scale: RationalLike = 1) -> Matrix:
    s = as_rational(scale)
    return tuple(tuple(s if i == j else Fraction(0) for j in range(n)) for i in range(n))


def diagonal(values: Sequence[RationalLike]) -> Matrix:
    vals = [as_rational(v) for v in values]
    n = len(vals)
    return tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, s: RationalLike) -> Matrix:
    s = as_rational(s)
    return tuple(tuple(x * s for x in row) for row in a)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def power_traces(a: Matrix, k: int) -> dict[int, Fraction]:
    """Return ``{j: tr(a^j)}`` for ``0 <= j <= k`` by repeated multiplication."""
    out = {0: Fraction(len(a))}
    if k == 0:
        return out
    power = a
    out[1] = trace(a)
    for j in range(2, k + 1):
        power = matmul(power, a)
        out[j] = trace(power)
    return out


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q."""
    n = len(a)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise InvalidParams("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def ldl_pivots(a: Matrix) -> list[Fraction] | None:
    """Symmetric elimination without pivoting, as used for PSD testing.

    Returns the list of diagonal pivots if ``a`` is positive semidefinite and
    ``None`` otherwise.  A zero pivot whose remaining column is nonzero means
    some 2x2 principal minor is negative, hence not PSD.
    """
    if not is_symmetric(a):
        return None
    n = len(a)
    work = [list(row) for row in a]
    pivots: list[Fraction] = []
    for k in range(n):
        p = work[k][k]
        if p < 0:
            return None
        if p == 0:
            if any(work[i][k] != 0 for i in range(k + 1, n)):
                return None
            pivots.append(Fraction(0))
            continue
        pivots.append(p)
        for i in range(k + 1, n):
            f = work[i][k] / p
            if f:
                for j in range(k + 1, n):
                    work[i][j] -= f * work[k][j]
    return pivots


def is_psd(a: Matrix) -> bool:
    return ldl_pivots(a) is not None


def is_pd(a: Matrix) -> bool:
    """Positive definite iff every leading principal minor is positive."""
    pivots = ldl_pivots(a)
    return pivots is not None and all(p > 0 for p in pivots)


def rank(a: Matrix) -> int:
    """Exact rank by fraction-valued Gaussian elimination."""
    work = [list(row) for row in a]
    rows = len(work)
    cols = len(work[0]) if work else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, rows):
            if work[i][c] != 0:
                f = work[i][c] / work[r][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == rows:
            break
    return r


def is_scalar_matrix(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == (a[0][0] if i == j else 0) for i in range(n) for j in range(n))


def det(a: Matrix) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    work = [list(row) for row in a]
    n = len(work)
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            out = -out
        out *= work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / work[c][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return out
