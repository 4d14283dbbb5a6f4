from fractions import Fraction
from math import lcm

import pytest

from errors import AmbiguousF, NotCoprime, SideConditionViolated
from models import BasketConfig, FictitiousPoint, IntersectionData
from services import reid


def test_residue():
    assert reid.residue(7, 3) == 1
    assert reid.residue(-1, 5) == 4
    assert reid.residue(0, 9) == 0


def test_gen_sum_conventions():
    ones = lambda i: 1
    assert reid.gen_sum(ones, 1, 0) == 0
    assert reid.gen_sum(lambda i: 5 if i == 2 else 0, 3, 1) == -5
    assert reid.gen_sum(ones, 1, 3) == 3


def test_basket_b():
    assert reid.basket_b(5, 0) == 0
    assert reid.basket_b(5, 7) == reid.basket_b(5, 2) == Fraction(3, 5)
    assert reid.basket_b(5, -2) == reid.basket_b(5, 2)


def test_c_point():
    assert all(reid.c_point(1, 0, i) == 0 for i in range(-3, 4))
    assert reid.c_point(2, 1, 1) == Fraction(-1, 8)
    assert reid.c_point(7, 3, 0) == 0
    assert reid.basket_a(2, 1, 1) == Fraction(-1, 8)


def test_c_point_depends_on_i_mod_r_only():
    for i in range(-10, 10):
        assert reid.c_point(7, 3, i) == reid.c_point(7, 3, i + 7)
        assert reid.c_point(7, 3, i) == reid.c_point(7, 4, i)


def test_periodic_sum_matches_the_generalized_sum():
    r, b = 9, 4
    for start, stop in [(1, 0), (0, 20), (-13, 5), (6, -4)]:
        direct = reid.gen_sum(lambda j: reid.basket_b(r, j * b), start, stop)
        i = stop + 1
        shifted = reid.basket_a(r, b, i) - reid.basket_a(r, b, start) + Fraction((i - start) * (r * r - 1), 12 * r)
        assert shifted == direct


def test_c_point_requires_coprime_data():
    with pytest.raises(NotCoprime):
        reid.c_point(6, 2, 1)


def _zero_config(v=0) -> BasketConfig:
    return BasketConfig(
        n=5,
        a=1,
        b_amb=2,
        points=(
            FictitiousPoint(r=5, b=2, d_class=3, v=v),
            FictitiousPoint(r=7, b=3, d_class=2, v=v),
        ),
    )


def test_delta_difference_vanishes_without_shift():
    config = _zero_config()
    assert all(reid.delta_difference(config, i) == 0 for i in range(-5, 6))


def test_delta_difference_with_zero_class():
    config = BasketConfig(
        n=1, a=1, b_amb=1,
        points=(FictitiousPoint(r=5, b=2, d_class=0, v=2), FictitiousPoint(r=7, b=3, d_class=0, v=1)),
    )
    assert reid.delta_difference(config, 3) == 0


@pytest.mark.parametrize("rparam", [2, 3])
def test_family_satisfies_the_delta_identity(rparam):
    config = reid.remark_family(rparam).config
    report = reid.verify_delta_identity(config, rparam, 2 * lcm(config.r1, config.r2))
    assert report.passed


def test_perturbed_family_fails_the_delta_identity():
    config = reid.remark_family(2).config
    first, second = config.points
    perturbed = BasketConfig(
        n=config.n, a=config.a, b_amb=config.b_amb,
        points=(first, FictitiousPoint(r=second.r, b=second.b, d_class=second.d_class, v=second.v + 1)),
    )
    report = reid.verify_delta_identity(perturbed, 2, 16)
    assert not report.passed
    assert report.violations[0] == 0


def test_index_from_basket():
    assert reid.index_from_basket(6, 6, 10, 10) == 1
    assert reid.index_from_basket(36, 36, 8, 4) == 2
    assert reid.index_from_basket(4, 1, 6, 1) == 12


def test_remark_family_two():
    report = reid.remark_family(2)
    config = report.config
    assert (config.n, config.a, config.b_amb, config.r1, config.r2) == (22, 2, 19, 36, 8)
    assert report.passed
    assert len(report.checks) == 5


def test_remark_family_three():
    report = reid.remark_family(3)
    assert report.config.n == 87
    assert report.passed


@pytest.mark.parametrize("rparam", [2, 3, 4, 5])
def test_family_index_is_the_parameter(rparam):
    config = reid.remark_family(rparam).config
    first, second = config.points
    assert reid.index_from_basket(first.r, first.d_class, second.r, second.d_class) == rparam


def test_remark_family_starts_at_two():
    with pytest.raises(ValueError):
        reid.remark_family(1)


def test_divisibility_conclusion():
    config = reid.remark_family(2).config
    assert reid.check_divisibility_conclusion(config, 2)
    assert reid.check_divisibility_conclusion(config, 1)

    artificial = BasketConfig(
        n=2, a=1, b_amb=1,
        points=(FictitiousPoint(r=3, b=1, d_class=1, v=1), FictitiousPoint(r=1, b=0, d_class=1, v=0)),
    )
    assert not reid.check_divisibility_conclusion(artificial, 2)
    with pytest.raises(SideConditionViolated):
        reid.check_divisibility_conclusion(artificial, 3)


def test_recover_f():
    config = reid.remark_family(2).config
    assert [reid.recover_f(p) for p in config.points] == [(7, "+"), (7, "+")]
    assert reid.recover_f(config.points[0], "-") == (29, "-")
    with pytest.raises(ValueError):
        reid.recover_f(config.points[0], "*")


def test_recover_f_without_an_inverse():
    point = FictitiousPoint.model_construct(r=4, b=2, d_class=1, v=1)
    with pytest.raises(AmbiguousF):
        reid.recover_f(point)


def test_chi_difference_of_trivial_data():
    result = reid.chi_difference(_zero_config(), IntersectionData(), 4, 1)
    assert result.value == 0
    smooth = BasketConfig(
        n=1, a=1, b_amb=1,
        points=(FictitiousPoint(r=1, b=0, d_class=1, v=0), FictitiousPoint(r=1, b=0, d_class=2, v=0)),
    )
    assert reid.chi_difference(smooth, IntersectionData(e3=6, e2k=4), 3, 2).delta2 == 0


def test_chi_difference_steps_match_delta_difference():
    config = reid.remark_family(2).config
    data = IntersectionData()
    for i in range(0, 12):
        step = reid.chi_difference(config, data, i + 1, 1).value - reid.chi_difference(config, data, i, 1).value
        assert step == reid.delta_difference(config, i)


def test_chi_difference_intersection_terms():
    config = _zero_config()
    data = IntersectionData(e3=Fraction(1, 2), e2k=-1, ec2=3)
    result = reid.chi_difference(config, data, 2, 1)
    assert result.delta1 == Fraction(1, 12) - Fraction(1, 4)
    assert result.value == result.delta1 + result.delta2 + Fraction(1, 4)


def test_chi_difference_branch_override():
    config = reid.remark_family(2).config
    result = reid.chi_difference(config, IntersectionData(), 1, 1, branches=("-", "+"))
    assert result.branches == ("-", "+")
    assert result.f_values == (29, 7)
