from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wishcone.cones import (
    Family,
    gindikin_contains,
    make_cone,
    parse_cone,
    wallach_contains,
    wallach_points,
)
from wishcone.errors import InvalidSize, NegativeShape


def test_examples():
    c = make_cone("real", 3)
    assert (c.rank, c.peirce, c.dim) == (3, 1, 6)
    c = make_cone("octonion")
    assert (c.rank, c.peirce, c.dim) == (3, 8, 27)
    c = make_cone("lorentz", 4)
    assert (c.rank, c.peirce, c.dim) == (2, 2, 4)


def test_parse():
    assert parse_cone("real:3") == make_cone(Family.REAL, 3)
    assert parse_cone("quat:2").peirce == 4
    assert parse_cone("lorentz:5").invariants() == (2, 3, 5)
    assert parse_cone("octonion").dim == 27
    with pytest.raises(InvalidSize):
        parse_cone("real")
    with pytest.raises(InvalidSize):
        parse_cone("spin:3")


def test_invalid_sizes():
    with pytest.raises(InvalidSize):
        make_cone("lorentz", 2)
    with pytest.raises(InvalidSize):
        make_cone("complex", 0)


def test_low_dimensional_coincidence():
    assert make_cone("lorentz", 3).invariants() == make_cone("real", 2).invariants()
    assert make_cone("lorentz", 4).invariants() == make_cone("complex", 2).invariants()
    assert make_cone("lorentz", 6).invariants() == make_cone("quat", 2).invariants()


@given(st.sampled_from(["real", "complex", "quat", "lorentz"]), st.integers(1, 20))
def test_dimension_identity(family, size):
    if family == "lorentz" and size < 3:
        return
    c = make_cone(family, size)
    assert 2 * c.dim == 2 * c.rank + c.peirce * c.rank * (c.rank - 1)
    assert c.alpha * c.peirce == 2


def test_wallach_examples():
    assert wallach_contains(make_cone("real", 3), Fraction(1, 2))
    assert not wallach_contains(make_cone("real", 3), Fraction(3, 4))
    assert wallach_contains(make_cone("complex", 3), 1)
    assert wallach_points(make_cone("real", 3)) == [0, Fraction(1, 2)]
    with pytest.raises(NegativeShape):
        wallach_contains(make_cone("real", 3), -1)


@given(st.integers(1, 8), st.fractions(min_value=0, max_value=6, max_denominator=8))
def test_wallach_equals_gindikin_for_real(mm, beta):
    assert wallach_contains(make_cone("real", mm), beta) == gindikin_contains(mm, beta)


def test_decimal_beta_is_exact():
    c = make_cone("real", 3)
    assert wallach_contains(c, "0.5")
    assert not wallach_contains(c, "0.5000000000000001")
