import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil
from typing import List, Optional, Sequence

from errors import (
    BelowThresholdAtZero,
    DegenerateInput,
    EmptyEnumeration,
    InvalidCone,
    NotAdmissible,
    NotAFace,
    NotInCone,
    NotRCartier,
    UnsupportedDimension,
)
from models import (
    AlctResult,
    CaratheodoryFold,
    Constraint,
    ExtRat,
    IntVector,
    MldResult,
    NEG_INFINITY,
    OrbitReduction,
    PLUS_INFINITY,
    PsiFunction,
    QuotientCone,
    ToricGerm,
    ToricPair,
    to_fraction,
)
from services import lattice

logger = logging.getLogger(__name__)


DEFAULT_BISECTION_ITERATIONS = 60
DEFAULT_MAX_DENOMINATOR = 10_000
# Largest general (non-simplicial) cone dimension with facet enumeration
MAX_GENERAL_DIM = 4
# Doublings of the psi_0 bound tried before giving up on an empty region
MAX_REGION_ENLARGEMENTS = 4


# Cones

def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@lru_cache(maxsize=1024)
def cone_facets(germ: ToricGerm) -> tuple[IntVector, ...]:
    """
    Primitive integral inward facet normals of the cone spanned by the rays.

    Simplicial cones use the inverse of the ray matrix; other cones test every
    (d-1)-subset of rays (supported up to dimension 4). Raises InvalidCone when
    the rays do not span a full-dimensional strongly convex cone with every
    ray extremal.
    """
    d = germ.dim
    rays = germ.rays
    if lattice.matrix_rank(rays) != d:
        raise InvalidCone(f"rays do not span Q^{d}")

    if germ.is_simplicial:
        inverse = lattice.rational_inverse(rays)
        facets = tuple(sorted(
            lattice.primitive_vector([inverse[i][j] for i in range(d)]) for j in range(d)
        ))
        return facets

    if d > MAX_GENERAL_DIM:
        raise UnsupportedDimension(f"facets of non-simplicial cones are computed up to dimension {MAX_GENERAL_DIM}")

    found = set()
    for subset in combinations(range(len(rays)), d - 1):
        rows = [rays[i] for i in subset]
        if d > 1 and lattice.matrix_rank(rows) != d - 1:
            continue
        kernel = lattice.rational_nullspace(rows, d)
        normal = lattice.primitive_vector(kernel[0])
        values = [_dot(normal, ray) for ray in rays]
        if all(v >= 0 for v in values):
            found.add(normal)
        elif all(v <= 0 for v in values):
            found.add(tuple(-x for x in normal))

    if not found or lattice.matrix_rank(sorted(found)) != d:
        raise InvalidCone("the rays do not span a strongly convex cone")
    for ray in rays:
        tight = [u for u in found if _dot(u, ray) == 0]
        if d > 1 and (not tight or lattice.matrix_rank(tight) != d - 1):
            raise InvalidCone(f"ray {ray} is not extremal")
    facets = tuple(sorted(found))
    logger.debug(f"Cone with {len(rays)} rays in dimension {d} has {len(facets)} facets")
    return facets


def in_cone(germ: ToricGerm, point: Sequence[int]) -> bool:
    return all(_dot(u, point) >= 0 for u in cone_facets(germ))


def in_relative_interior(germ: ToricGerm, point: Sequence[int]) -> bool:
    return all(_dot(u, point) > 0 for u in cone_facets(germ))


def _support_covector(germ: ToricGerm, values: Sequence[Fraction]) -> PsiFunction:
    cone_facets(germ)
    solution = lattice.solve_rational(germ.rays, values)
    if solution.status == "inconsistent":
        raise NotRCartier("no linear function takes the prescribed values on the rays")
    return PsiFunction(covector=solution.values)


def psi_from_pair(pair: ToricPair) -> PsiFunction:
    """The linear function psi on the cone with psi(e_i) = 1 - b_i."""
    return _support_covector(pair.germ, [1 - b for b in pair.coeffs])


def psi_zero(germ: ToricGerm) -> PsiFunction:
    return _support_covector(germ, [Fraction(1)] * len(germ.rays))


# Cyclic quotients

def quotient_germ_to_toric(n: int, chars: Sequence[int]) -> QuotientCone:
    """
    Toric model of the quotient of C^d by 1/n(a_1, ..., a_d).

    The lattice N = Z^d + Z (1/n)(a_1..a_d) is scaled by n, rebased by the
    Hermite normal form of its generators and rescaled back, so that it
    becomes Z^d. The positive orthant is carried over ray by ray in the order
    of the coordinates.
    """
    if n < 1:
        raise ValueError("the order of the action must be positive")
    d = len(chars)
    if d < 1:
        raise ValueError("at least one character is required")
    reduced = tuple(int(a) % n for a in chars)
    generators = [tuple(n if i == j else 0 for j in range(d)) for i in range(d)] + [reduced]
    hnf = lattice.hermite_normal_form(generators)
    basis = hnf.h[:d]
    inverse = lattice.rational_inverse(basis)
    rays = tuple(
        lattice.primitive_vector(lattice.vec_mat([n if i == j else 0 for j in range(d)], inverse))
        for i in range(d)
    )
    germ = ToricGerm(dim=d, rays=rays)
    logger.debug(f"1/{n}{reduced} rebased with basis {basis}")
    return QuotientCone(germ=germ, order=n, chars=reduced, basis=basis)


def quotient_coordinates(cone: QuotientCone, point: Sequence[int]) -> tuple[Fraction, ...]:
    """Coordinates of a rebased lattice point in the original (1/n)-lattice."""
    return tuple(Fraction(x) / cone.order for x in lattice.vec_mat(point, cone.basis))


@lru_cache(maxsize=256)
def _basis_inverse(basis: tuple) -> tuple:
    return lattice.rational_inverse(basis)


def weight_lattice_point(cone: QuotientCone, numerators: Sequence[int]) -> IntVector:
    """Rebased lattice point of (1/n)(w_1, ..., w_d)."""
    inverse = _basis_inverse(cone.basis)
    point = lattice.vec_mat([Fraction(w) for w in numerators], inverse)
    if any(x.denominator != 1 for x in point):
        raise NotAdmissible(f"(1/{cone.order}){tuple(numerators)} is not in the lattice N")
    return tuple(int(x) for x in point)


# Minimal log discrepancies

@lru_cache(maxsize=256)
def relint_points(germ: ToricGerm, bound: Fraction) -> tuple[IntVector, ...]:
    """Lattice points e in the relative interior with psi_0(e) <= bound, lexicographically."""
    psi0 = psi_zero(germ)
    constraints = [
        Constraint(covector=tuple(-x for x in u), bound=0, strict=True)
        for u in cone_facets(germ)
    ]
    constraints.append(Constraint(covector=psi0.covector, bound=bound))
    points = tuple(lattice.enumerate_lattice_points(constraints, dim=germ.dim))
    logger.debug(f"{len(points)} relative interior points with psi_0 <= {bound}")
    return points


def _search_region(germ: ToricGerm, bound: Fraction) -> tuple[IntVector, ...]:
    points = relint_points(germ, bound)
    attempts = 0
    while not points:
        if attempts == MAX_REGION_ENLARGEMENTS:
            raise EmptyEnumeration(f"no relative interior point with psi_0 <= {bound}")
        bound *= 2
        attempts += 1
        logger.warning(f"Empty search region, enlarging the psi_0 bound to {bound}")
        points = relint_points(germ, bound)
    return points


def toric_mld(pair: ToricPair, region_bound=None, fold: bool = True) -> MldResult:
    """
    Minimal log discrepancy of the pair at the torus-fixed point.

    The minimum of psi over the relative interior is attained at a point with
    psi_0 <= d, so only that finite region is searched (region_bound widens it
    for oracle runs). Any coefficient above 1 makes the pair not lc.
    """
    germ = pair.germ
    psi = psi_from_pair(pair)
    if any(b > 1 for b in pair.coeffs):
        logger.debug(f"Coefficient above 1 in {pair.coeffs}, mld is -inf")
        return MldResult(value=NEG_INFINITY)

    bound = Fraction(germ.dim) if region_bound is None else to_fraction(region_bound)
    points = _search_region(germ, bound)

    best, witness = None, None
    for point in points:
        value = psi.value(point)
        if best is None or value < best:
            best, witness = value, point

    psi0 = psi_zero(germ)
    decomposition = caratheodory_decompose(germ, witness, psi) if fold else None
    logger.debug(f"mld {best} at {witness}")
    return MldResult(value=best, witness=witness, psi0_witness=psi0.value(witness), fold=decomposition)


def caratheodory_decompose(germ: ToricGerm, point: Sequence[int], psi: Optional[PsiFunction] = None) -> CaratheodoryFold:
    """
    Write a point of the cone over linearly independent rays and fold it.

    Subsets are searched by size, then lexicographically; the first one giving
    all lambda > 0 is used. The fold replaces each lambda by lambda + 1 - ceil(lambda).
    """
    point = tuple(int(x) for x in point)
    if len(point) != germ.dim:
        raise ValueError(f"point of length {len(point)} in dimension {germ.dim}")
    if not any(point):
        raise ValueError("the zero vector has no Caratheodory decomposition")
    if not in_cone(germ, point):
        raise NotInCone(f"{point} is not in the cone")

    rays = germ.rays
    for size in range(1, germ.dim + 1):
        for subset in combinations(range(len(rays)), size):
            chosen = [rays[i] for i in subset]
            if lattice.matrix_rank(chosen) != size:
                continue
            columns = [[chosen[j][i] for j in range(size)] for i in range(germ.dim)]
            solution = lattice.solve_rational(columns, point)
            if solution.status != "solution" or any(x <= 0 for x in solution.values):
                continue
            return _fold(germ, subset, solution.values, psi)
    raise NotInCone(f"{point} has no positive combination of rays")


def _fold(germ: ToricGerm, subset: tuple[int, ...], lambdas: Sequence[Fraction], psi: Optional[PsiFunction]) -> CaratheodoryFold:
    folded = tuple(lam + 1 - ceil(lam) for lam in lambdas)
    folded_point = [Fraction(0)] * germ.dim
    for coeff, index in zip(folded, subset):
        for i, x in enumerate(germ.rays[index]):
            folded_point[i] += coeff * x
    psi0_folded = sum(folded, Fraction(0))
    result = CaratheodoryFold(
        subset=subset,
        lambdas=tuple(lambdas),
        folded_coeffs=folded,
        folded_point=tuple(int(x) for x in folded_point),
        psi0_folded=psi0_folded,
    )
    if psi is not None and all(psi.value(germ.rays[i]) >= 0 for i in subset):
        original = sum((lam * psi.value(germ.rays[i]) for lam, i in zip(lambdas, subset)), Fraction(0))
        if psi.value(result.folded_point) > original:
            raise ArithmeticError("folding increased psi")
    return result


def toric_alct(pair: ToricPair, dcoeffs: Sequence, a) -> AlctResult:
    """
    Largest t with mld(B + tD) >= a.

    Each ray with d_i > 0 and each point of the bounded search region with
    psi_D > 0 gives a linear bound on t; the result is the smallest.
    """
    germ = pair.germ
    dcoeffs = tuple(to_fraction(x) for x in dcoeffs)
    a = to_fraction(a)
    if a < 0:
        raise ValueError("a must be non-negative")
    if len(dcoeffs) != len(germ.rays):
        raise ValueError(f"{len(dcoeffs)} divisor coefficients for {len(germ.rays)} rays")
    if not any(dcoeffs):
        raise DegenerateInput("the divisor D is zero")

    psi_b = psi_from_pair(pair)
    psi_d = _support_covector(germ, dcoeffs)
    mld = toric_mld(pair)
    if mld.value < a:
        raise BelowThresholdAtZero(f"mld of the pair is {mld.value}, below a = {a}")

    best: ExtRat = PLUS_INFINITY
    binding_ray, binding_point = None, None
    for index, (b, d) in enumerate(zip(pair.coeffs, dcoeffs)):
        if d > 0:
            bound = (1 - b) / d
            if bound < best:
                best, binding_ray = bound, index

    for point in _search_region(germ, Fraction(germ.dim)):
        weight = psi_d.value(point)
        if weight <= 0:
            continue
        bound = (psi_b.value(point) - a) / weight
        if bound < best:
            best, binding_ray, binding_point = bound, None, point

    logger.debug(f"a-lct {best} (ray {binding_ray}, point {binding_point})")
    return AlctResult(value=best, binding_ray=binding_ray, binding_point=binding_point)


def _shifted_pair(pair: ToricPair, dcoeffs: Sequence[Fraction], t: Fraction) -> ToricPair:
    return ToricPair(germ=pair.germ, coeffs=tuple(b + t * d for b, d in zip(pair.coeffs, dcoeffs)))


def bisection_threshold(
    pair: ToricPair,
    dcoeffs: Sequence,
    a,
    iterations: int = DEFAULT_BISECTION_ITERATIONS,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> ExtRat:
    """
    Independent estimate of the a-lc threshold by bisection on t.

    Expects D effective so that mld(B + tD) is non-increasing in t. The final
    lower end is reconstructed as the nearest fraction with bounded denominator.
    """
    dcoeffs = tuple(to_fraction(x) for x in dcoeffs)
    a = to_fraction(a)

    def ok(t: Fraction) -> bool:
        return toric_mld(_shifted_pair(pair, dcoeffs, t), fold=False).value >= a

    if not ok(Fraction(0)):
        raise BelowThresholdAtZero("the pair is already below a at t = 0")
    hi = Fraction(1)
    doublings = 0
    while ok(hi):
        hi *= 2
        doublings += 1
        if doublings > 40:
            return PLUS_INFINITY
    lo = hi / 2 if doublings else Fraction(0)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo.limit_denominator(max_denominator)


# Orbit reduction

def reduce_orbit_point(pair: ToricPair, face: Sequence[int]) -> OrbitReduction:
    """
    Split off the torus factor at the orbit of a face.

    The face is given by ray indices and must be a face of the cone. Its rays
    are written in a saturated basis of N intersected with the span of the
    face, which gives a germ of dimension c = dim(face) whose mld at the fixed
    point equals the mld of the pair at the generic point of the orbit.
    """
    germ = pair.germ
    face = tuple(sorted(set(int(i) for i in face)))
    if not face:
        raise NotAFace("the empty face has no orbit point to reduce to")
    if any(i < 0 or i >= len(germ.rays) for i in face):
        raise NotAFace(f"face {face} refers to missing rays")

    facets = cone_facets(germ)
    face_rays = [germ.rays[i] for i in face]
    supporting = [u for u in facets if all(_dot(u, r) == 0 for r in face_rays)]
    closure = tuple(
        i for i, r in enumerate(germ.rays)
        if all(_dot(u, r) == 0 for u in supporting)
    )
    if closure != face:
        raise NotAFace(f"rays {face} do not form a face (smallest face containing them is {closure})")

    d = germ.dim
    c = lattice.matrix_rank(face_rays)
    annihilator = lattice.rational_nullspace(face_rays, d) if c < d else ()
    basis = lattice.integer_kernel(annihilator, d)
    columns = [[basis[j][i] for j in range(c)] for i in range(d)]

    reduced_rays = []
    for ray in face_rays:
        solution = lattice.solve_rational(columns, ray)
        reduced_rays.append(tuple(int(x) for x in solution.values))

    reduced = ToricPair(
        germ=ToricGerm(dim=c, rays=tuple(reduced_rays)),
        coeffs=tuple(pair.coeffs[i] for i in face),
    )
    logger.debug(f"Face {face} reduces to dimension {c} with torus factor {d - c}")
    return OrbitReduction(pair=reduced, face=face, codim=c, torus_factor=d - c, basis=basis)
