import logging
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import UnboundedRegion
from models import Constraint, HermiteDecomposition, IntMatrix, IntVector, LinearSolution, to_fraction
from utils.parallel import partitioned_map

logger = logging.getLogger(__name__)


# Integer matrices

def identity_matrix(size: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def mat_mul(left: Sequence[Sequence], right: Sequence[Sequence]) -> tuple:
    """Exact product of two matrices given as row sequences."""
    if not left:
        return ()
    inner = len(right)
    cols = len(right[0]) if right else 0
    return tuple(
        tuple(sum(left[i][k] * right[k][j] for k in range(inner)) for j in range(cols))
        for i in range(len(left))
    )


def vec_mat(vector: Sequence, matrix: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    cols = len(matrix[0]) if matrix else 0
    return tuple(sum(vector[k] * matrix[k][j] for k in range(len(matrix))) for j in range(cols))


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _combine_rows(a: List[List[int]], u: List[List[int]], top: int, other: int, col: int) -> None:
    """Unimodular 2x2 row operation leaving gcd at (top, col) and 0 at (other, col)."""
    g, s, t = _exgcd(a[top][col], a[other][col])
    p, q = a[top][col] // g, a[other][col] // g
    for rows in (a, u):
        row_top, row_other = rows[top], rows[other]
        rows[top] = [s * x + t * y for x, y in zip(row_top, row_other)]
        rows[other] = [-q * x + p * y for x, y in zip(row_top, row_other)]


def hermite_normal_form(matrix: Sequence[Sequence[int]]) -> HermiteDecomposition:
    """
    Row-style Hermite normal form with transform.

    Returns H, U with U unimodular and U.M = H. H is in row echelon form,
    pivots are positive and entries above a pivot lie in [0, pivot). Zero rows
    (rank deficiency) collect at the bottom and are reported through `rank`.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    ncols = len(a[0]) if m else 0
    u = [list(row) for row in identity_matrix(m)]

    pivot_row = 0
    for col in range(ncols):
        if pivot_row == m:
            break
        for i in range(pivot_row + 1, m):
            if a[i][col] != 0:
                _combine_rows(a, u, pivot_row, i, col)
        pivot = a[pivot_row][col]
        if pivot == 0:
            continue
        if pivot < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
            pivot = -pivot
        for i in range(pivot_row):
            q = a[i][col] // pivot
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivot_row += 1

    return HermiteDecomposition(
        h=tuple(tuple(row) for row in a),
        u=tuple(tuple(row) for row in u),
        rank=pivot_row,
    )


def integer_determinant(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix:
        return 1
    return int(_to_fraction(_domain_matrix(matrix).det()))


def primitive_vector(vector: Sequence) -> IntVector:
    """Clear denominators of a rational vector and divide out the content."""
    fracs = [to_fraction(x) for x in vector]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# Rational linear algebra over QQ

def _domain_matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    ncols = len(rows[0]) if rows else 0
    elements = []
    for row in rows:
        fracs = [to_fraction(x) for x in row]
        elements.append([QQ(f.numerator, f.denominator) for f in fracs])
    return DomainMatrix(elements, (len(rows), ncols), QQ)


def _to_fraction(element) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def _fraction_rows(dm: DomainMatrix) -> tuple:
    return tuple(tuple(_to_fraction(x) for x in row) for row in dm.to_list())


def solve_rational(a: Sequence[Sequence], b: Sequence) -> LinearSolution:
    """
    Solve A.x = b exactly.

    The system is classified as having a unique solution, being inconsistent,
    or being underdetermined (then a particular solution with all free
    variables set to zero is returned).
    """
    if len(a) != len(b):
        raise ValueError(f"{len(a)} equations but {len(b)} right-hand sides")
    ncols = len(a[0]) if a else 0
    if not a:
        return LinearSolution(status="underdetermined", values=tuple(Fraction(0) for _ in range(ncols)), free_count=ncols)

    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rref, pivots = _domain_matrix(augmented).rref()
    if ncols in pivots:
        return LinearSolution(status="inconsistent")

    rows = _fraction_rows(rref)
    values = [Fraction(0)] * ncols
    for row_index, col in enumerate(pivots):
        values[col] = rows[row_index][ncols]

    free_count = ncols - len(pivots)
    if free_count:
        logger.debug(f"Underdetermined system: {free_count} free variables")
        return LinearSolution(status="underdetermined", values=tuple(values), free_count=free_count)
    return LinearSolution(status="solution", values=tuple(values))


def matrix_rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return int(_domain_matrix(rows).rank())


def rational_inverse(rows: Sequence[Sequence]) -> tuple:
    return _fraction_rows(_domain_matrix(rows).inv())


def rational_nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple:
    """Basis (as rows) of {x : A.x = 0}."""
    if not rows:
        size = ncols or 0
        return tuple(tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size))
    return _fraction_rows(_domain_matrix(rows).nullspace())


def integer_kernel(rows: Sequence[Sequence], ncols: int) -> IntMatrix:
    """Saturated integer basis of {x in Z^n : A.x = 0}, one basis vector per row."""
    if not rows:
        return identity_matrix(ncols)
    integral = [primitive_vector(row) for row in rows]
    transposed = [[integral[i][j] for i in range(len(integral))] for j in range(ncols)]
    hnf = hermite_normal_form(transposed)
    return tuple(hnf.u[i] for i in range(hnf.rank, ncols))


# Lattice points of polytopes

def _tighten(constraint: Constraint) -> Optional[tuple[IntVector, int]]:
    """
    Integral form (A, c) of a constraint, meaning A.x <= c for integer x.

    Strict inequalities become A.x <= ceil(bound) - 1 once A is primitive.
    Returns None for a constraint with zero covector that always holds and
    raises _Infeasible for one that never holds.
    """
    covector = list(constraint.covector)
    scale = lcm(*(c.denominator for c in covector)) if covector else 1
    ints = [int(c * scale) for c in covector]
    bound = constraint.bound * scale
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        holds = bound > 0 if constraint.strict else bound >= 0
        if holds:
            return None
        raise _Infeasible()
    ints = [x // g for x in ints]
    bound = bound / g
    if constraint.strict:
        limit = -((-bound.numerator) // bound.denominator) - 1
    else:
        limit = bound.numerator // bound.denominator
    return tuple(ints), limit


class _Infeasible(Exception):
    pass


def _normalize_integral(covector: Sequence[int], bound: int) -> Optional[tuple[IntVector, int]]:
    g = 0
    for x in covector:
        g = gcd(g, x)
    if g == 0:
        if bound < 0:
            raise _Infeasible()
        return None
    return tuple(x // g for x in covector), bound // g


def _add_constraint(system: dict, item: Optional[tuple[IntVector, int]]) -> None:
    if item is None:
        return
    covector, bound = item
    if covector not in system or bound < system[covector]:
        system[covector] = bound


def _eliminate(system: dict, var: int) -> dict:
    """Fourier-Motzkin elimination of one variable, with integer tightening."""
    result = {}
    upper, lower = [], []
    for covector, bound in system.items():
        coeff = covector[var]
        if coeff > 0:
            upper.append((covector, bound))
        elif coeff < 0:
            lower.append((covector, bound))
        else:
            _add_constraint(result, (covector, bound))
    for up_cov, up_bound in upper:
        for low_cov, low_bound in lower:
            p, q = up_cov[var], -low_cov[var]
            combined = tuple(q * x + p * y for x, y in zip(up_cov, low_cov))
            _add_constraint(result, _normalize_integral(combined, q * up_bound + p * low_bound))
    return result


def _coordinate_range(system: dict, prefix: Sequence[int], var: int) -> Optional[tuple[int, int]]:
    lo, hi = None, None
    for covector, bound in system.items():
        slack = bound - sum(c * x for c, x in zip(covector, prefix))
        coeff = covector[var]
        if coeff > 0:
            top = slack // coeff
            hi = top if hi is None else min(hi, top)
        elif coeff < 0:
            bottom = -((-slack) // coeff)
            lo = bottom if lo is None else max(lo, bottom)
        elif slack < 0:
            return None
    if lo is None or hi is None:
        raise UnboundedRegion(f"no {'lower' if lo is None else 'upper'} bound on coordinate {var}")
    if lo > hi:
        return None
    return lo, hi


def _extend(projections: List[dict], prefix: List[int], dim: int, out: List[IntVector]) -> None:
    var = len(prefix)
    bounds = _coordinate_range(projections[var + 1], prefix, var)
    if bounds is None:
        return
    for value in range(bounds[0], bounds[1] + 1):
        prefix.append(value)
        if var + 1 == dim:
            out.append(tuple(prefix))
        else:
            _extend(projections, prefix, dim, out)
        prefix.pop()


def enumerate_lattice_points(
    constraints: Sequence[Constraint],
    dim: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[IntVector]:
    """
    All integer points of {x : <a_i, x> <= b_i (or < b_i)}, sorted lexicographically.

    Coordinates are enumerated one at a time with exact bounds taken from the
    Fourier-Motzkin projections of the system. Raises UnboundedRegion when a
    coordinate lacks a lower or upper bound.
    """
    if dim is None:
        if not constraints:
            raise ValueError("dimension is required when there are no constraints")
        dim = len(constraints[0].covector)
    for c in constraints:
        if len(c.covector) != dim:
            raise ValueError(f"constraint of length {len(c.covector)} in dimension {dim}")

    try:
        system = {}
        for c in constraints:
            _add_constraint(system, _tighten(c))
        # projections[k] constrains only x_0..x_{k-1}
        projections = [dict() for _ in range(dim + 1)]
        projections[dim] = system
        for var in range(dim - 1, -1, -1):
            projections[var] = _eliminate(projections[var + 1], var)
    except _Infeasible:
        return []

    if dim == 0:
        return [()]

    first = _coordinate_range(projections[1], [], 0)
    if first is None:
        return []

    def branch(value: int) -> List[IntVector]:
        out: List[IntVector] = []
        if dim == 1:
            return [(value,)]
        _extend(projections, [value], dim, out)
        return out

    points = []
    for chunk in partitioned_map(branch, range(first[0], first[1] + 1), workers=workers):
        points.extend(chunk)
    logger.debug(f"Enumerated {len(points)} lattice points in dimension {dim}")
    return points
