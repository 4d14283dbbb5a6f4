import pytest

from errors import NegativeExponent
from services import newton
from utils.parsing import parse_poly


def test_dominated_generator_is_dropped():
    assert newton.from_generators(2, [(1, 1), (2, 2)]).vertices == ((1, 1),)


def test_incomparable_generators_all_stay():
    polytope = newton.from_generators(2, [(2, 0), (0, 3), (1, 1)])
    assert polytope.vertices == ((0, 3), (1, 1), (2, 0))
    assert newton.is_antichain(polytope)


def test_empty_generators_give_empty_polytope():
    polytope = newton.from_generators(3, [])
    assert polytope.is_empty
    assert not newton.contains(polytope, (0, 0, 0))


def test_negative_coordinates_are_rejected():
    with pytest.raises(NegativeExponent):
        newton.from_generators(2, [(-1, 0)])


def test_contains():
    assert newton.contains(newton.from_generators(2, [(1, 1)]), (3, 1))
    assert not newton.contains(newton.from_generators(2, [(2, 0), (0, 3)]), (1, 1))


def test_is_subpolytope():
    n = newton.from_generators(2, [(2, 0), (0, 3)])
    assert newton.is_subpolytope(n, n)
    assert not newton.is_subpolytope(newton.from_generators(2, [(1, 1)]), newton.from_generators(2, [(0, 2), (2, 0)]))
    assert newton.is_subpolytope(newton.from_generators(2, [(2, 2)]), newton.from_generators(2, [(1, 1)]))


def test_constant_sequence_is_one_chain():
    n = newton.from_generators(2, [(1, 2)])
    assert newton.longest_descending_chain([n] * 5) == [0, 1, 2, 3, 4]


def test_reversed_ascending_unions_form_a_full_chain():
    points = [(4, 0), (3, 1), (1, 3), (0, 4), (2, 2)]
    ascending = newton.ascending_unions(2, points)
    assert not newton.has_strict_descent(ascending)
    descending = list(reversed(ascending))
    assert newton.longest_descending_chain(descending) == list(range(len(points)))
    assert newton.has_strict_descent(descending)


def test_antichain_of_polytopes_has_chain_of_length_one():
    sequence = [newton.from_generators(2, [p]) for p in [(3, 0), (2, 1), (1, 2), (0, 3)]]
    assert newton.longest_descending_chain(sequence) == [0]


def test_chain_prefers_lexicographically_least_indices():
    sequence = [newton.from_generators(2, pts) for pts in ([(0, 0)], [(1, 0), (0, 1)], [(2, 0)], [(0, 2)], [(2, 1)])]
    assert newton.longest_descending_chain(sequence) == [0, 1, 2, 4]


def test_dropping_a_non_chain_element_does_not_lengthen_the_chain():
    sequence = [newton.from_generators(2, pts) for pts in ([(0, 0)], [(1, 0), (0, 1)], [(2, 0)], [(0, 2)], [(2, 1)])]
    chain = newton.longest_descending_chain(sequence)
    for skipped in set(range(len(sequence))) - set(chain):
        rest = sequence[:skipped] + sequence[skipped + 1:]
        assert len(newton.longest_descending_chain(rest)) <= len(chain)


def test_newton_polytope_of_polynomials():
    assert newton.newton_polytope_of(parse_poly("x1*x2 + x3^3", 3)).vertices == ((0, 0, 3), (1, 1, 0))
    assert newton.newton_polytope_of(parse_poly("1 + x1", 1)).vertices == ((0,),)
    assert newton.newton_polytope_of(parse_poly("x1 - x1", 2)).is_empty
