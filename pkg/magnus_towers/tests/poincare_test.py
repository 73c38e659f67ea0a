import pytest
from hypothesis import given, settings, strategies as st

from ..monomial_combinatorics import *
from ..poincare import *
from ..utils import *

THEOREM_MAIN_5_5 = [1, 5, 20, 74, 264, 924, 3200, 11016, 37792, 129392, 442496, 1512224, 5165952]


def test_invert_unit_series():
    """Tests the inverses of 1 - t, 1 and 1 - 2t."""
    assert list(invert_unit_series(IntSeries((1, -1, 0, 0, 0)))) == [1, 1, 1, 1, 1]
    assert list(invert_unit_series(IntSeries((1, 0, 0)))) == [1, 0, 0]
    assert list(invert_unit_series(IntSeries.polynomial({0: 1, 1: -2}, 5))) == [1, 2, 4, 8, 16, 32]


def test_invert_unit_series_needs_unit():
    """Tests that a constant coefficient other than 1 is rejected."""
    with pytest.raises(UsageError):
        invert_unit_series(IntSeries((2, 1)))


@settings(max_examples=500, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=12))
def test_invert_unit_series_is_exact(tail):
    """Tests that a random unit series times its inverse is 1."""
    s = IntSeries((1, *tail))
    assert list(s * invert_unit_series(s)) == [1] + [0] * len(tail)


def test_degree_spec():
    """Tests the relation counts per degree and the text form."""
    spec = DegreeSpec((2, 2, 4), 3)
    assert [spec.count(degree) for degree in range(2, 6)] == [2, 1, 2, 1]
    assert str(spec) == "2x2, 4x1, 3.."
    assert str(DegreeSpec()) == "none"
    with pytest.raises(UsageError):
        DegreeSpec((1,))


def test_degree_spec_from_family():
    """Tests that the first unbounded parametric member becomes the tail."""
    family = MonomialFamily.parse("X5.X3\nX4.X2\nX5.X4^n.X1", 5)
    assert DegreeSpec.from_family(family) == DegreeSpec((2, 2), 3)
    two_tails = MonomialFamily.parse("X5.X4^n.X1\nX3.X2^n.X1", 5)
    assert DegreeSpec.from_family(two_tails, upto=5) == DegreeSpec((3, 4, 5), 3)
    with pytest.raises(UsageError):
        DegreeSpec.from_family(two_tails)


def test_mild_poincare_quadratic_relations():
    """Tests (1 - 5t + 5t^2)^-1, the series of the five quadratic relations alone."""
    assert list(mild_poincare(5, DegreeSpec((2,) * 5), 6)) == [1, 5, 20, 75, 275, 1000, 3625]


def test_mild_poincare_one_letter():
    """Tests the free algebra on one letter."""
    assert list(mild_poincare(1, DegreeSpec(), 4)) == [1, 1, 1, 1, 1]


def test_theorem_main_series_values():
    """Tests (1 - 5t + 5t^2 + t^3 / (1 - t))^-1 to degree 12."""
    assert list(theorem_main_series(5, 5, 12)) == THEOREM_MAIN_5_5
    assert str(theorem_main_series(5, 5, 3)) == "1, 5, 20, 74 (mod t^4)"


def test_theorem_main_series_is_mild_poincare():
    """Tests that the main series is the mild series of r quadratic relations plus one in each degree >= 3."""
    for d, r in [(5, 5), (7, 3), (4, 0)]:
        assert theorem_main_series(d, r, 15) == mild_poincare(d, DegreeSpec((2,) * r, 3), 15)


def test_theorem_main_series_without_relations():
    """Tests that without quadratic relations the series starts 1, d, d^2."""
    assert list(theorem_main_series(6, 0, 2)) == [1, 6, 36]


def test_theorem_main_series_validation():
    """Tests that d must be positive and r nonnegative."""
    with pytest.raises(UsageError):
        theorem_main_series(0, 0, 5)
    with pytest.raises(UsageError):
        theorem_main_series(3, -1, 5)


def test_mild_poincare_times_defining_series():
    """Tests that the mild series multiplied back by its defining series is 1."""
    spec = DegreeSpec((2, 2, 3, 7), 5)
    series = mild_poincare(4, spec, 20)
    assert list(series * defining_series(4, spec, 20)) == [1] + [0] * 20


def test_defining_series():
    """Tests 1 - dt + sum t^n_i with a tail."""
    assert list(defining_series(5, DegreeSpec((2,) * 5, 3), 5)) == [1, -5, 5, 1, 1, 1]
    with pytest.raises(UsageError):
        defining_series(5, DegreeSpec(), -1)


def test_check_nonnegative():
    """Tests the scan for negative coefficients."""
    assert check_nonnegative(mild_poincare(5, DegreeSpec((2,) * 5, 3), 20)) is None
    assert check_nonnegative(IntSeries((1,))) is None
    over_related = mild_poincare(1, DegreeSpec((2, 2, 2), 3), 6)
    assert list(over_related)[:3] == [1, 1, -2] and check_nonnegative(over_related) == 2


def test_int_series_truncate():
    """Tests that a series can be cut but not extended."""
    s = IntSeries((1, 2, 3))
    assert s.truncate(1) == IntSeries((1, 2)) and s.N == 2
    with pytest.raises(UsageError):
        s.truncate(5)
