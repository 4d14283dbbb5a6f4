import logging
import random
from fractions import Fraction
from itertools import product
from math import floor, gcd, lcm
from typing import Callable, Dict, List, Optional, Sequence

from config import MLDKIT_SEED
from models import (
    BoundaryDivisor,
    Check,
    Constraint,
    CyclicAction,
    HyperquotientGerm,
    SuiteResult,
    ToricGerm,
    ToricPair,
    Weight,
)
from services import germs, lattice, newton, reid, thresholds, toric, weights
from utils import random_instances as rand
from utils.parsing import parse_poly

logger = logging.getLogger(__name__)


# Extra psi_0 slack of the brute-force region in the oracle comparisons
ORACLE_REGION_SLACK = 3


def _summary(name: str, failures: List[str], total: int) -> Check:
    detail = f"{total - len(failures)}/{total} ok"
    if failures:
        detail += f"; first failure: {failures[0]}"
    return Check(name=name, passed=not failures, detail=detail)


# lattice

def _random_region(rng: random.Random, dim: int):
    """A random rational box in [-7/2, 7/2]^dim cut by one to three random half-spaces."""
    constraints, ranges = [], []
    for i in range(dim):
        axis = [1 if i == j else 0 for j in range(dim)]
        upper = Fraction(rng.randint(0, 7), 2)
        lower = Fraction(rng.randint(0, 7), 2)
        constraints.append(Constraint(covector=axis, bound=upper, strict=rng.random() < 0.2))
        constraints.append(Constraint(covector=[-a for a in axis], bound=lower, strict=rng.random() < 0.2))
        ranges.append(range(-floor(lower), floor(upper) + 1))
    for _ in range(rng.randint(1, 3)):
        constraints.append(Constraint(
            covector=[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(dim)],
            bound=Fraction(rng.randint(-2, 4), rng.randint(1, 2)),
            strict=rng.random() < 0.5,
        ))
    return constraints, ranges


def suite_lattice(rng: random.Random, samples: int = 200) -> List[Check]:
    hnf_failures = []
    for _ in range(samples):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = rand.generate_int_matrix(rng, rows, cols)
        result = lattice.hermite_normal_form(m)
        if lattice.mat_mul(result.u, m) != result.h or abs(lattice.integer_determinant(result.u)) != 1:
            hnf_failures.append(f"{m}")
    enum_failures = []
    for _ in range(samples):
        dim = rng.randint(1, 4)
        constraints, ranges = _random_region(rng, dim)
        found = lattice.enumerate_lattice_points(constraints, dim=dim)
        expected = [p for p in product(*ranges) if all(_satisfies(c, p) for c in constraints)]
        if found != expected:
            enum_failures.append(f"{constraints}")
    return [
        _summary("hnf: U.M = H with U unimodular", hnf_failures, samples),
        _summary("enumeration matches box brute force", enum_failures, samples),
    ]


def _satisfies(constraint: Constraint, point: Sequence[int]) -> bool:
    value = sum((c * x for c, x in zip(constraint.covector, point)), Fraction(0))
    return value < constraint.bound if constraint.strict else value <= constraint.bound


# newton

def suite_newton(rng: random.Random, samples: int = 500) -> List[Check]:
    chain_failures, optimality_failures, ascending_failures = [], [], []
    for _ in range(samples):
        sequence = rand.generate_newton_sequence(rng)
        chain = newton.longest_descending_chain(sequence)
        if any(
            not newton.is_subpolytope(sequence[j], sequence[i])
            for i, j in zip(chain, chain[1:])
        ):
            chain_failures.append(f"{chain}")
        for skipped in range(len(sequence)):
            if skipped in chain:
                continue
            rest = sequence[:skipped] + sequence[skipped + 1:]
            if len(newton.longest_descending_chain(rest)) > len(chain):
                optimality_failures.append(f"{chain} grows without index {skipped}")
                break
        dim = sequence[0].dim
        points = rand.generate_points(rng, dim, rng.randint(1, 8))
        if newton.has_strict_descent(newton.ascending_unions(dim, points)):
            ascending_failures.append(f"{points}")
    return [
        _summary("longest descending chain is a containment chain", chain_failures, samples),
        _summary("removing a non-chain element never lengthens the chain", optimality_failures, samples),
        _summary("ascending unions have no strict descent", ascending_failures, samples),
    ]


# weighted calculus

def _random_weight(rng: random.Random, dim: int) -> Weight:
    return Weight(entries=[Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(dim)])


def suite_weights(rng: random.Random, samples: int = 200) -> List[Check]:
    lead_failures, product_failures, dominance_failures, newton_failures = [], [], [], []
    for _ in range(samples):
        dim = rng.randint(1, 4)
        h = rand.generate_poly(rng, dim)
        w = _random_weight(rng, dim)
        lead = weights.leading_term(w, h)
        mu = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        ok = (
            weights.is_w_homogeneous(w, lead)
            and weights.weight_of_poly(w, lead) == weights.weight_of_poly(w, h)
            and weights.weight_of_poly(weights.scale_weight(w, mu), h) == mu * weights.weight_of_poly(w, h)
            and weights.leading_term(weights.scale_weight(w, mu), h) == lead
        )
        if not ok:
            lead_failures.append(f"{h.terms} under {w.entries}")

        q = rand.generate_poly(rng, dim, terms=rng.randint(1, 4))
        product = weights.poly_mul(h, q)
        if (
            weights.leading_term(w, product) != weights.poly_mul(lead, weights.leading_term(w, q))
            or weights.weight_of_poly(w, product) != weights.weight_of_poly(w, h) + weights.weight_of_poly(w, q)
        ):
            product_failures.append(f"{h.terms} * {q.terms} under {w.entries}")

        w2 = _random_weight(rng, dim)
        bigger = Weight(entries=[mu * e + Fraction(rng.randint(0, 3), rng.randint(1, 2)) for e in w2.entries])
        if not (
            weights.dominates_scaled(bigger, w2, mu)
            and weights.weight_of_poly(bigger, h) >= mu * weights.weight_of_poly(w2, h)
        ):
            dominance_failures.append(f"{h.terms} under {bigger.entries} and {mu} * {w2.entries}")

        if not newton.is_subpolytope(newton.newton_polytope_of(lead), newton.newton_polytope_of(h)):
            newton_failures.append(f"{h.terms} under {w.entries}")
    return [
        _summary("leading terms are homogeneous of the same weight", lead_failures, samples),
        _summary("leading term of a product is the product of leading terms", product_failures, samples),
        _summary("w >= mu w2 gives w(h) >= mu w2(h)", dominance_failures, samples),
        _summary("Newton polytope of the leading term lies in that of h", newton_failures, samples),
    ]


# germs

def _ca7_fixture():
    germ = HyperquotientGerm(
        dim=4,
        action=CyclicAction(n=7, chars=(1, -1, 2, 0)),
        eqs=(parse_poly("x1*x2 + x3^7", 4),),
        tag="cA_over_n",
    )
    return germ, germs.admissible_weight(germ, (5, 16, 3, 7))


def suite_germs(rng: random.Random, samples: int = 100, budget: int = 30) -> List[Check]:
    germ, w = _ca7_fixture()
    report = germs.check_kawakita_pattern(germ, w)
    certificate = germs.irreducibility_certificate(germ, w)
    direct = germs.germ_weight_discrepancy(germ, w)
    checks = [
        Check(name="cA/7 passes weight table case (1)", passed=report.case == "1" and report.passed),
        Check(
            name="cA/7 certificate predicts 3/7",
            passed=certificate.status == "certified" and certificate.predicted == direct == Fraction(3, 7),
            detail=f"predicted {certificate.predicted}, direct {direct}",
        ),
    ]

    failures = []
    total = 0
    for _ in range(samples):
        quotient_germ = rand.generate_pure_quotient(rng)
        coeffs = [rng.choice((Fraction(0), Fraction(1, 3), Fraction(1, 2))) for _ in range(quotient_germ.dim)]
        boundary = [
            BoundaryDivisor(coeff=c, defining=weights.monomial([1 if i == j else 0 for j in range(quotient_germ.dim)]))
            for i, c in enumerate(coeffs)
        ]
        cone = toric.quotient_germ_to_toric(quotient_germ.order, quotient_germ.action.chars)
        psi = toric.psi_from_pair(ToricPair(germ=cone.germ, coeffs=coeffs))
        for weight in germs.enumerate_admissible_weights(quotient_germ, budget):
            total += 1
            expected = germs.log_discrepancy(quotient_germ, boundary, weight)
            point = toric.weight_lattice_point(cone, weight.numerators)
            if psi.value(point) != expected:
                failures.append(f"1/{quotient_germ.order}{quotient_germ.action.chars} w={weight.numerators}")
    checks.append(_summary("weighted blow-up discrepancy equals toric psi", failures, total))
    return checks


# toric

def suite_toric(rng: random.Random, samples: int = 200, alct_samples: int = 100) -> List[Check]:
    checks = []

    failures = []
    count = 0
    for n in range(1, 13):
        for d in (2, 3, 4):
            count += 1
            cone = toric.quotient_germ_to_toric(n, [1] * d)
            pair = ToricPair(germ=cone.germ, coeffs=[0] * d)
            value = toric.toric_mld(pair).value
            oracle = toric.toric_mld(pair, region_bound=d + ORACLE_REGION_SLACK, fold=False).value
            if value != Fraction(d, n) or oracle != value:
                failures.append(f"1/{n}(1^{d}): {value}, oracle {oracle}")
    checks.append(_summary("mld of 1/n(1,...,1) is d/n", failures, count))

    bound_failures, oracle_failures, invariance_failures, monotone_failures = [], [], [], []
    for _ in range(samples):
        pair = rand.generate_lc_pair(rng)
        d = pair.germ.dim
        result = toric.toric_mld(pair)
        if result.psi0_witness > d:
            bound_failures.append(f"{pair.germ.rays}")
        oracle = toric.toric_mld(pair, region_bound=d + ORACLE_REGION_SLACK, fold=False)
        if oracle.value != result.value:
            oracle_failures.append(f"{pair.germ.rays} {pair.coeffs}")

        u = rand.generate_unimodular(rng, d)
        moved = ToricPair(
            germ=ToricGerm(dim=d, rays=tuple(lattice.vec_mat(ray, u) for ray in pair.germ.rays)),
            coeffs=pair.coeffs,
        )
        moved_result = toric.toric_mld(moved, fold=False)
        moved_witness = lattice.vec_mat(result.witness, u)
        if moved_result.value != result.value or toric.psi_from_pair(moved).value(moved_witness) != result.value:
            invariance_failures.append(f"{pair.germ.rays} under {u}")

        smaller = ToricPair(germ=pair.germ, coeffs=tuple(b / 2 for b in pair.coeffs))
        if toric.toric_mld(smaller, fold=False).value < result.value:
            monotone_failures.append(f"{pair.germ.rays} {pair.coeffs}")
    checks += [
        _summary("witness satisfies psi_0 <= d", bound_failures, samples),
        _summary("mld agrees with the enlarged-region oracle", oracle_failures, samples),
        _summary("mld is invariant under unimodular change of basis", invariance_failures, samples),
        _summary("mld is monotone in the boundary", monotone_failures, samples),
    ]

    alct_failures = []
    fixed = [
        (ToricPair(germ=ToricGerm(dim=2, rays=((1, 0), (0, 1))), coeffs=(0, 0)), (1, 0), 1, Fraction(1)),
        (ToricPair(germ=ToricGerm(dim=2, rays=((1, 0), (0, 1))), coeffs=(0, 0)), (1, 1), 1, Fraction(1, 2)),
    ]
    for pair, dcoeffs, a, expected in fixed:
        if toric.toric_alct(pair, dcoeffs, a).value != expected:
            alct_failures.append(f"{dcoeffs} at a={a}")
    done = len(fixed)
    while done < alct_samples:
        if rng.random() < 0.3:
            germ = rand.generate_polygon_cone(rng)
            pair = ToricPair(germ=germ, coeffs=tuple(Fraction(0) for _ in germ.rays))
            dcoeffs = rand.generate_cartier_divisor_coeffs(rng, germ)
        else:
            germ = rand.generate_simplicial_cone(rng, rng.randint(1, 3))
            pair = ToricPair(germ=germ, coeffs=tuple(rng.choice((Fraction(0), Fraction(0), Fraction(1, 3))) for _ in germ.rays))
            dcoeffs = rand.generate_divisor_coeffs(rng, len(germ.rays))
        a = rng.choice((Fraction(0), Fraction(1), Fraction(3, 2)))
        if toric.toric_mld(pair, fold=False).value < a:
            continue
        done += 1
        exact = toric.toric_alct(pair, dcoeffs, a).value
        oracle = toric.bisection_threshold(pair, dcoeffs, a)
        if exact != oracle:
            alct_failures.append(f"{germ.rays} D={dcoeffs} a={a}: {exact} vs {oracle}")
    checks.append(_summary("a-lc threshold agrees with bisection", alct_failures, alct_samples))
    return checks


# reid

def suite_reid(rng: random.Random, samples: int = 10_000) -> List[Check]:
    failures = []
    for _ in range(samples):
        r = rng.randint(1, 200)
        b = rng.randint(1, r)
        while gcd(b, r) != 1:
            b = rng.randint(1, r)
        i = rng.randint(-3 * r, 3 * r)
        c = reid.c_point(r, b, i)
        ok = (
            c == reid.c_point(r, b, i + r)
            and c == reid.c_point(r, r - b, i)
            and reid.basket_a(r, b, i) == reid.basket_a(r, b, reid.residue(i, r))
        )
        if not ok:
            failures.append(f"r={r} b={b} i={i}")
    checks = [_summary("c_Q is independent of i mod r and of b -> r - b", failures, samples)]

    family_failures = []
    for rparam in (2, 3, 4, 5):
        report = reid.remark_family(rparam)
        config = report.config
        span = 2 * lcm(config.r1, config.r2)
        delta = reid.verify_delta_identity(config, rparam, span)
        index = reid.index_from_basket(config.r1, config.points[0].d_class, config.r2, config.points[1].d_class)
        if not (report.passed and delta.passed and index == rparam and reid.check_divisibility_conclusion(config, rparam)):
            family_failures.append(f"rparam={rparam}")
    checks.append(_summary("two-point family satisfies the delta identity", family_failures, 4))
    return checks


# thresholds

def suite_thresholds(rng: random.Random, samples: int = 20) -> List[Check]:
    set_failures = []
    for k in (1, 2):
        floor_value = Fraction(1, k + 1)
        big = thresholds.enumerate_smooth_ct_set(k, 100)
        small = thresholds.enumerate_smooth_ct_set(k, 50)
        tail = floor_value + Fraction(1, 20)
        if any(v <= floor_value for v in big):
            set_failures.append(f"k={k}: value at or below 1/(k+1)")
        if big[0] - floor_value > Fraction(2, 100):
            set_failures.append(f"k={k}: minimum {big[0]} too far from 1/(k+1)")
        if sum(1 for v in big if v > tail) != sum(1 for v in small if v > tail):
            set_failures.append(f"k={k}: tail count changes between caps")
    checks = [_summary("candidate sets accumulate only at 1/(k+1)", set_failures, 2)]

    monotone_failures = []
    for _ in range(samples):
        seqs = rand.generate_ratio_sequences(rng)
        result = thresholds.monotone_ratio_subsequence(seqs)
        if not thresholds.is_monotone_ratio(seqs, result):
            monotone_failures.append(f"pivot {result.pivot}")
    checks.append(_summary("monotone ratio subsequence verifies", monotone_failures, samples))
    return checks


SUITES: Dict[str, Callable[[random.Random], List[Check]]] = {
    "lattice": suite_lattice,
    "newton": suite_newton,
    "weights": suite_weights,
    "germs": suite_germs,
    "toric": suite_toric,
    "reid": suite_reid,
    "thresholds": suite_thresholds,
}


def run_suites(names: Optional[Sequence[str]] = None, seed: Optional[int] = None) -> List[SuiteResult]:
    """Run the named invariant suites (all by default), each with its own seeded generator."""
    names = list(SUITES) if not names else list(names)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    seed = MLDKIT_SEED if seed is None else seed
    results = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        checks = SUITES[name](rng)
        result = SuiteResult(name=name, checks=tuple(checks))
        logger.info(f"Suite {name}: {'pass' if result.passed else 'FAIL'}")
        results.append(result)
    return results
