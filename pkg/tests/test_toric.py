from fractions import Fraction

import pytest

from errors import (
    BelowThresholdAtZero,
    DegenerateInput,
    InvalidCone,
    NotAdmissible,
    NotAFace,
    NotInCone,
    NotRCartier,
)
from models import NEG_INFINITY, ToricGerm, ToricPair
from services import toric


def test_facets_of_the_square_cone(square_cone):
    assert toric.cone_facets(square_cone) == ((-1, 0, 1), (0, -1, 1), (0, 1, 0), (1, 0, 0))


def test_degenerate_rays_are_not_a_cone():
    with pytest.raises(InvalidCone):
        toric.cone_facets(ToricGerm(dim=2, rays=((1, 0), (-1, 0))))


def test_interior_ray_is_not_extremal():
    germ = ToricGerm(dim=3, rays=((0, 0, 1), (2, 0, 1), (0, 2, 1), (2, 2, 1), (1, 1, 1)))
    with pytest.raises(InvalidCone):
        toric.cone_facets(germ)


def test_psi_zero_of_smooth_cone(smooth_plane):
    assert toric.psi_zero(smooth_plane).covector == (1, 1)


def test_smooth_mld_is_the_dimension(smooth_plane):
    result = toric.toric_mld(ToricPair(germ=smooth_plane, coeffs=(0, 0)))
    assert result.value == 2
    assert result.witness == (1, 1)
    three = ToricGerm(dim=3, rays=((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert toric.toric_mld(ToricPair(germ=three, coeffs=(0, 0, 0))).value == 3


def test_mld_with_boundary(smooth_plane):
    result = toric.toric_mld(ToricPair(germ=smooth_plane, coeffs=(Fraction(1, 2), Fraction(1, 3))))
    assert result.value == Fraction(7, 6)


def test_quotient_one_half_has_mld_one():
    cone = toric.quotient_germ_to_toric(2, (1, 1))
    result = toric.toric_mld(ToricPair(germ=cone.germ, coeffs=(0, 0)))
    assert result.value == 1
    assert result.psi0_witness == 1
    assert toric.quotient_coordinates(cone, result.witness) == (Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("n,d", [(3, 2), (3, 3), (5, 3), (4, 4)])
def test_quotient_by_diagonal_action(n, d):
    cone = toric.quotient_germ_to_toric(n, [1] * d)
    assert toric.toric_mld(ToricPair(germ=cone.germ, coeffs=[0] * d)).value == Fraction(d, n)


def test_quotient_rays_map_to_coordinate_vectors():
    cone = toric.quotient_germ_to_toric(5, (1, 2, 3))
    for i, ray in enumerate(cone.germ.rays):
        assert toric.quotient_coordinates(cone, ray) == tuple(Fraction(int(i == j)) for j in range(3))


def test_weight_lattice_point():
    cone = toric.quotient_germ_to_toric(2, (1, 1))
    point = toric.weight_lattice_point(cone, (1, 1))
    assert toric.quotient_coordinates(cone, point) == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(NotAdmissible):
        toric.weight_lattice_point(cone, (1, 2))


def test_coefficient_above_one_is_not_lc(smooth_plane):
    result = toric.toric_mld(ToricPair(germ=smooth_plane, coeffs=(2, 0)))
    assert result.value == NEG_INFINITY
    assert not result.is_lc
    assert result.witness is None


def test_non_gorenstein_square_cone(square_cone):
    result = toric.toric_mld(ToricPair(germ=square_cone, coeffs=(0, 0, 0, 0)))
    assert result.value == 2
    assert result.witness == (1, 1, 2)


def test_boundary_that_is_not_q_cartier(square_cone):
    pair = ToricPair(germ=square_cone, coeffs=(Fraction(1, 2), 0, 0, 0))
    with pytest.raises(NotRCartier):
        toric.toric_mld(pair)


def test_enlarged_region_agrees(square_cone):
    pair = ToricPair(germ=square_cone, coeffs=(0, 0, 0, 0))
    assert toric.toric_mld(pair, region_bound=6, fold=False).value == toric.toric_mld(pair).value


def test_caratheodory_fold(smooth_plane):
    fold = toric.caratheodory_decompose(smooth_plane, (3, 2))
    assert fold.subset == (0, 1)
    assert fold.lambdas == (3, 2)
    assert fold.folded_coeffs == (1, 1)
    assert fold.folded_point == (1, 1)
    assert fold.psi0_folded == 2


def test_fold_of_a_single_ray(smooth_plane):
    fold = toric.caratheodory_decompose(smooth_plane, (4, 0))
    assert fold.subset == (0,)
    assert fold.folded_point == (1, 0)


def test_fold_of_a_fractional_point():
    cone = toric.quotient_germ_to_toric(2, (1, 1))
    witness = toric.toric_mld(ToricPair(germ=cone.germ, coeffs=(0, 0))).witness
    fold = toric.caratheodory_decompose(cone.germ, witness)
    assert fold.lambdas == (Fraction(1, 2), Fraction(1, 2))
    assert fold.folded_point == witness


def test_decompose_rejects_points_outside(smooth_plane):
    with pytest.raises(NotInCone):
        toric.caratheodory_decompose(smooth_plane, (-1, 0))
    with pytest.raises(ValueError):
        toric.caratheodory_decompose(smooth_plane, (0, 0))


def test_lct_of_a_coordinate_line(plane_pair):
    result = toric.toric_alct(plane_pair, (1, 0), 1)
    assert result.value == 1
    assert result.binding_ray == 0


def test_alct_of_both_axes(plane_pair):
    result = toric.toric_alct(plane_pair, (1, 1), 1)
    assert result.value == Fraction(1, 2)
    assert result.binding_point == (1, 1)
    assert toric.toric_alct(plane_pair, (1, 1), 0).value == 1


def test_alct_agrees_with_bisection(plane_pair):
    assert toric.bisection_threshold(plane_pair, (1, 0), 1) == 1
    assert toric.bisection_threshold(plane_pair, (1, 1), 1) == Fraction(1, 2)


def test_alct_errors(plane_pair):
    with pytest.raises(DegenerateInput):
        toric.toric_alct(plane_pair, (0, 0), 1)
    with pytest.raises(BelowThresholdAtZero):
        toric.toric_alct(plane_pair, (1, 0), 3)


def test_alct_on_the_square_cone(square_cone):
    pair = ToricPair(germ=square_cone, coeffs=(0, 0, 0, 0))
    divisor = (0, 1, 0, 1)
    at_one = toric.toric_alct(pair, divisor, 1)
    assert at_one.value == 1
    assert at_one.binding_ray == 1
    at_three_halves = toric.toric_alct(pair, divisor, Fraction(3, 2))
    assert at_three_halves.value == Fraction(1, 2)
    assert at_three_halves.binding_point == (1, 1, 2)
    assert toric.bisection_threshold(pair, divisor, 1) == 1
    assert toric.bisection_threshold(pair, divisor, Fraction(3, 2)) == Fraction(1, 2)


def test_alct_enlarges_an_empty_region(plane_pair, monkeypatch):
    real = toric.relint_points

    def sparse(germ, bound):
        return () if bound < 4 else real(germ, bound)

    monkeypatch.setattr(toric, "relint_points", sparse)
    result = toric.toric_alct(plane_pair, (1, 1), 1)
    assert result.value == Fraction(1, 2)
    assert result.binding_point == (1, 1)


def test_orbit_reduction_of_a_smooth_face():
    germ = ToricGerm(dim=3, rays=((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    pair = ToricPair(germ=germ, coeffs=(Fraction(1, 2), Fraction(1, 3), 0))
    reduction = toric.reduce_orbit_point(pair, (1, 0))
    assert reduction.face == (0, 1)
    assert reduction.codim == 2
    assert reduction.torus_factor == 1
    assert reduction.pair.coeffs == (Fraction(1, 2), Fraction(1, 3))
    assert toric.toric_mld(reduction.pair).value == Fraction(7, 6)


def test_orbit_reduction_of_square_cone_faces(square_cone):
    pair = ToricPair(germ=square_cone, coeffs=(0, 0, 0, 0))
    edge = toric.reduce_orbit_point(pair, (0, 1))
    assert edge.codim == 2
    assert toric.toric_mld(edge.pair).value == 2
    whole = toric.reduce_orbit_point(pair, (0, 1, 2, 3))
    assert whole.torus_factor == 0


def test_orbit_reduction_rejects_non_faces(square_cone):
    pair = ToricPair(germ=square_cone, coeffs=(0, 0, 0, 0))
    with pytest.raises(NotAFace):
        toric.reduce_orbit_point(pair, (0, 3))
    with pytest.raises(NotAFace):
        toric.reduce_orbit_point(pair, ())
    with pytest.raises(NotAFace):
        toric.reduce_orbit_point(pair, (7,))
