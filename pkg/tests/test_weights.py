from fractions import Fraction

import pytest

from errors import ZeroPolynomial
from models import PLUS_INFINITY, Weight
from services import newton, weights
from utils.parsing import parse_poly


def w(*entries) -> Weight:
    return Weight(entries=entries)


def test_weight_of_monomial():
    assert weights.weight_of_monomial(w(1, 1, 1), (1, 1, 0)) == 2
    assert weights.weight_of_monomial(w(Fraction(1, 3), Fraction(2, 3), Fraction(1, 3), 1), (0, 0, 3, 0)) == 1
    assert weights.weight_of_monomial(w(2, 5), (0, 0)) == 0


def test_weight_of_zero_polynomial_is_infinite():
    assert weights.weight_of_poly(w(1, 2), weights.zero_poly(2)) == PLUS_INFINITY


def test_weight_of_poly_is_the_minimum_over_the_support():
    assert weights.weight_of_poly(w(1, 2), parse_poly("x1^2 + x2", 2)) == 2
    third = w(Fraction(1, 3), Fraction(2, 3), Fraction(1, 3))
    assert weights.weight_of_poly(third, parse_poly("x1*x2 + x3^3", 3)) == 1


def test_leading_term():
    h = parse_poly("x1^2 + x2 + x1^3", 2)
    assert weights.leading_term(w(1, 2), h) == parse_poly("x1^2 + x2", 2)
    monomial = parse_poly("3*x1*x2^2", 2)
    assert weights.leading_term(w(1, 2), monomial) == monomial


def test_leading_term_of_zero_raises():
    with pytest.raises(ZeroPolynomial):
        weights.leading_term(w(1, 1), weights.zero_poly(2))


def test_is_w_homogeneous():
    assert weights.is_w_homogeneous(w(1, 1, 1), parse_poly("x1*x2 + x3^2", 3))
    assert not weights.is_w_homogeneous(w(1, 1), parse_poly("x1 + x2^2", 2))
    assert weights.is_w_homogeneous(w(3, 7), parse_poly("x1^4*x2", 2))


def test_truncate():
    h = parse_poly("5 + x1 + x2^2", 2)
    assert weights.truncate(h, 0) == parse_poly("5", 2)
    assert weights.truncate(parse_poly("x1 + x2^2", 2), 1) == parse_poly("x1", 2)


def test_truncation_degree_keeps_every_light_term():
    weight = w(Fraction(1, 2), 3)
    h = parse_poly("x1^7 + x1^2*x2 + x2^2", 2)
    degree = weights.truncation_degree(weight, 4)
    assert weights.weighted_truncate(weights.truncate(h, degree), weight, 4) == weights.weighted_truncate(h, weight, 4)


def test_compare_weights():
    same = weights.compare_weights(w(1, 2), w(1, 2))
    assert same.geq and same.scalar == 1
    double = weights.compare_weights(w(2, 4), w(1, 2))
    assert double.geq and double.scalar == 2
    assert weights.compare_weights(w(2, 1), w(1, 2)).incomparable


def test_dominates_scaled():
    assert weights.dominates_scaled(w(3, 5), w(2, 3), Fraction(3, 2))
    assert not weights.dominates_scaled(w(3, 4), w(2, 3), Fraction(3, 2))


def test_polynomial_arithmetic():
    x = parse_poly("x1", 2)
    y = parse_poly("x2", 2)
    assert weights.poly_mul(weights.poly_add(x, y), weights.poly_add(x, weights.poly_scale(y, -1))) == parse_poly("x1^2 - x2^2", 2)
    assert weights.poly_from_terms(2, [((1, 0), 1), ((1, 0), -1)]).is_zero


def test_polynomial_arithmetic_with_fractions():
    half = parse_poly("1/2*x1 + x2", 2)
    assert weights.poly_mul(half, parse_poly("2/3*x1", 2)) == parse_poly("1/3*x1^2 + 2/3*x1*x2", 2)
    assert weights.poly_scale(half, 0).is_zero
    assert weights.poly_add(half, weights.poly_scale(half, -1)).is_zero


def test_leading_term_of_a_product():
    weight = w(1, 1)
    p = parse_poly("x1 + x2^2", 2)
    q = parse_poly("x1^2 + x2", 2)
    product = weights.poly_mul(p, q)
    assert weights.leading_term(weight, product) == weights.poly_mul(
        weights.leading_term(weight, p), weights.leading_term(weight, q)
    )
    assert weights.leading_term(weight, product) == parse_poly("x1*x2", 2)
    assert weights.weight_of_poly(weight, product) == weights.weight_of_poly(weight, p) + weights.weight_of_poly(weight, q)


def test_dominating_weight_is_superadditive():
    h = parse_poly("x1^2 + x2", 2)
    assert weights.dominates_scaled(w(3, 5), w(1, 2), 2)
    assert weights.weight_of_poly(w(3, 5), h) == 5
    assert weights.weight_of_poly(w(3, 5), h) >= 2 * weights.weight_of_poly(w(1, 2), h)


def test_newton_polytope_of_leading_term_is_inside():
    h = parse_poly("x1^2 + x1*x2 + x2^3", 2)
    lead = weights.leading_term(w(1, 1), h)
    assert newton.newton_polytope_of(lead).vertices == ((1, 1), (2, 0))
    assert newton.is_subpolytope(newton.newton_polytope_of(lead), newton.newton_polytope_of(h))
