from fractions import Fraction

from models import NEG_INFINITY, PLUS_INFINITY, AlctResult, CtBound, MldResult


def test_infinite_results_build():
    assert MldResult(value=NEG_INFINITY).value == NEG_INFINITY
    assert not MldResult(value=NEG_INFINITY).is_lc
    assert CtBound(value=PLUS_INFINITY, budget=3).value == PLUS_INFINITY
    assert AlctResult(value=PLUS_INFINITY).value == PLUS_INFINITY


def test_finite_results_stay_fractions():
    result = AlctResult(value=Fraction(1, 2), binding_ray=0)
    assert result.value == Fraction(1, 2)
    assert isinstance(result.value, Fraction)
    assert MldResult(value=Fraction(7, 6)).is_lc