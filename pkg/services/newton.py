import logging
from typing import List, Sequence

from errors import NegativeExponent
from models import IntVector, NewtonPolytope, Poly

logger = logging.getLogger(__name__)


def _dominates(v: Sequence[int], p: Sequence[int]) -> bool:
    """v <= p componentwise."""
    return all(a <= b for a, b in zip(v, p))


def from_generators(dim: int, points: Sequence[Sequence[int]]) -> NewtonPolytope:
    """
    Newton polytope generated by points: the union of p + Z^d_{>=0}.

    The stored vertices are the minimal points under the componentwise order,
    sorted lexicographically.
    """
    cleaned = set()
    for p in points:
        p = tuple(int(x) for x in p)
        if len(p) != dim:
            raise ValueError(f"point {p} does not have length {dim}")
        if any(x < 0 for x in p):
            raise NegativeExponent(f"point {p} has a negative coordinate")
        cleaned.add(p)

    vertices = [
        p for p in cleaned
        if not any(q != p and _dominates(q, p) for q in cleaned)
    ]
    return NewtonPolytope(dim=dim, vertices=tuple(sorted(vertices)))


def contains(polytope: NewtonPolytope, p: Sequence[int]) -> bool:
    if len(p) != polytope.dim:
        raise ValueError(f"point {tuple(p)} does not have length {polytope.dim}")
    return any(_dominates(v, p) for v in polytope.vertices)


def is_subpolytope(inner: NewtonPolytope, outer: NewtonPolytope) -> bool:
    """inner is contained in outer."""
    if inner.dim != outer.dim:
        raise ValueError("Newton polytopes of different dimensions")
    return all(contains(outer, v) for v in inner.vertices)


def union(first: NewtonPolytope, second: NewtonPolytope) -> NewtonPolytope:
    if first.dim != second.dim:
        raise ValueError("Newton polytopes of different dimensions")
    return from_generators(first.dim, list(first.vertices) + list(second.vertices))


def is_antichain(polytope: NewtonPolytope) -> bool:
    vs = polytope.vertices
    return not any(
        i != j and _dominates(vs[i], vs[j])
        for i in range(len(vs)) for j in range(len(vs))
    )


def newton_polytope_of(h: Poly) -> NewtonPolytope:
    return from_generators(h.dim, list(h.terms))


def ascending_unions(dim: int, points: Sequence[Sequence[int]]) -> List[NewtonPolytope]:
    """The sequence P_j = union of (v_i + Z^d_{>=0}) over i <= j."""
    sequence = []
    current = NewtonPolytope(dim=dim)
    for p in points:
        current = union(current, from_generators(dim, [p]))
        sequence.append(current)
    return sequence


def has_strict_descent(sequence: Sequence[NewtonPolytope]) -> bool:
    """True if some j < j' has P_j strictly containing P_j'."""
    for j in range(len(sequence)):
        for k in range(j + 1, len(sequence)):
            if is_subpolytope(sequence[k], sequence[j]) and not is_subpolytope(sequence[j], sequence[k]):
                return True
    return False


def longest_descending_chain(sequence: Sequence[NewtonPolytope]) -> List[int]:
    """
    Indices i_1 < i_2 < ... of a longest run with N_{i_j} containing N_{i_{j+1}}.

    Dynamic programming over the containment DAG from the right. Among chains
    of maximal length the lexicographically least index list is returned.
    """
    if not sequence:
        raise ValueError("longest_descending_chain needs a nonempty sequence")
    dims = {p.dim for p in sequence}
    if len(dims) != 1:
        raise ValueError("Newton polytopes of different dimensions")

    size = len(sequence)
    best: List[List[int]] = [[] for _ in range(size)]
    for i in range(size - 1, -1, -1):
        tail: List[int] = []
        for j in range(i + 1, size):
            if not is_subpolytope(sequence[j], sequence[i]):
                continue
            candidate = best[j]
            if len(candidate) > len(tail) or (len(candidate) == len(tail) and candidate < tail):
                tail = candidate
        best[i] = [i] + tail

    chain = best[0]
    for candidate in best[1:]:
        if len(candidate) > len(chain):
            chain = candidate
    logger.debug(f"Longest descending chain has length {len(chain)} out of {size}")
    return chain
