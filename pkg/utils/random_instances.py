from fractions import Fraction
from math import gcd
import random

from errors import InvalidCone
from models import CyclicAction, HyperquotientGerm, NewtonPolytope, Poly, ToricGerm, ToricPair
from services import lattice, newton, toric
from services.germs import is_well_formed


# Coefficients drawn for random boundaries; all <= 1 so pairs stay lc
BOUNDARY_COEFFS = (Fraction(0), Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))


def generate_int_matrix(rng: random.Random, rows: int, cols: int, low: int = -6, high: int = 6) -> list[list[int]]:
    return [[rng.randint(low, high) for _ in range(cols)] for _ in range(rows)]


def generate_unimodular(rng: random.Random, dim: int, steps: int = 6) -> list[list[int]]:
    """Random unimodular matrix as a product of elementary row operations."""
    u = [list(row) for row in lattice.identity_matrix(dim)]
    if dim == 1:
        return [[rng.choice((1, -1))]]
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2)
        factor = rng.choice((-2, -1, 1, 2))
        u[i] = [x + factor * y for x, y in zip(u[i], u[j])]
    if rng.random() < 0.5:
        u[0] = [-x for x in u[0]]
    return u


def generate_simplicial_cone(rng: random.Random, dim: int, max_det: int = 8) -> ToricGerm:
    """Simplicial cone with small entries and |det| <= max_det."""
    while True:
        rays = []
        for _ in range(dim):
            row = [rng.randint(-1, 2) for _ in range(dim)]
            g = 0
            for x in row:
                g = gcd(g, x)
            if g == 0:
                break
            rays.append(tuple(x // g for x in row))
        if len(rays) != dim or len(set(rays)) != dim:
            continue
        det = lattice.integer_determinant(rays)
        if det != 0 and abs(det) <= max_det:
            return ToricGerm(dim=dim, rays=tuple(rays))


def generate_polygon_cone(rng: random.Random, vertices: int = 4) -> ToricGerm:
    """Non-simplicial cone in dimension 3 over a lattice polygon at height 1."""
    while True:
        points = {(rng.randint(-2, 2), rng.randint(-2, 2), 1) for _ in range(vertices)}
        if len(points) < 4:
            continue
        germ = ToricGerm(dim=3, rays=tuple(sorted(points)))
        try:
            toric.cone_facets(germ)
        except InvalidCone:
            continue
        return germ


def generate_lc_pair(rng: random.Random, max_dim: int = 4) -> ToricPair:
    """Random lc toric pair; polygon cones carry B = 0 so that K + B stays Q-Cartier."""
    dim = rng.randint(1, max_dim)
    if dim == 3 and rng.random() < 0.25:
        germ = generate_polygon_cone(rng)
        return ToricPair(germ=germ, coeffs=tuple(Fraction(0) for _ in germ.rays))
    germ = generate_simplicial_cone(rng, dim)
    return ToricPair(germ=germ, coeffs=tuple(rng.choice(BOUNDARY_COEFFS) for _ in germ.rays))


def generate_divisor_coeffs(rng: random.Random, size: int) -> tuple[Fraction, ...]:
    """Effective nonzero divisor coefficients."""
    while True:
        coeffs = tuple(Fraction(rng.randint(0, 2), rng.randint(1, 2)) for _ in range(size))
        if any(coeffs):
            return coeffs


def generate_cartier_divisor_coeffs(rng: random.Random, germ: ToricGerm) -> tuple[Fraction, ...]:
    """Effective nonzero coefficients d_i = <m, v_i> / q of a Q-Cartier divisor on a polygon cone."""
    while True:
        m = (rng.randint(-1, 1), rng.randint(-1, 1), 4)
        q = rng.randint(1, 2)
        coeffs = tuple(Fraction(sum(a * x for a, x in zip(m, ray)), q) for ray in germ.rays)
        if any(coeffs) and all(c >= 0 for c in coeffs):
            return coeffs


def generate_quotient_action(rng: random.Random, max_dim: int = 3, max_order: int = 7) -> CyclicAction:
    """Well-formed cyclic action 1/n(a_1..a_d) with n >= 2."""
    while True:
        dim = rng.randint(2, max_dim)
        n = rng.randint(2, max_order)
        action = CyclicAction(n=n, chars=tuple(rng.randint(1, n - 1) for _ in range(dim)))
        if is_well_formed(action):
            return action


def generate_pure_quotient(rng: random.Random, **kwargs) -> HyperquotientGerm:
    action = generate_quotient_action(rng, **kwargs)
    return HyperquotientGerm(dim=action.dim, action=action)


def generate_points(rng: random.Random, dim: int, count: int, max_coord: int = 20) -> list[tuple[int, ...]]:
    return [tuple(rng.randint(0, max_coord) for _ in range(dim)) for _ in range(count)]


def generate_newton_sequence(rng: random.Random, max_dim: int = 4, max_len: int = 8, max_coord: int = 20) -> list[NewtonPolytope]:
    """Sequence of random Newton polytopes with one to three generators each."""
    dim = rng.randint(1, max_dim)
    return [
        newton.from_generators(dim, generate_points(rng, dim, rng.randint(1, 3), max_coord))
        for _ in range(rng.randint(1, max_len))
    ]


def generate_poly(rng: random.Random, dim: int, terms: int = 5, max_exp: int = 4) -> Poly:
    collected = {}
    for _ in range(terms):
        alpha = tuple(rng.randint(0, max_exp) for _ in range(dim))
        collected[alpha] = Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 3))
    return Poly(dim=dim, terms=collected)


def generate_ratio_sequences(rng: random.Random, count: int = 3, length: int = 256) -> list[list[Fraction]]:
    return [
        [Fraction(rng.randint(1, 50), rng.randint(1, 10)) for _ in range(length)]
        for _ in range(count)
    ]
