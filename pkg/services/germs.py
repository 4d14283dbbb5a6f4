import logging
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence

from errors import (
    CertificateMismatch,
    EmptyEnumeration,
    NotAdmissible,
    NotSemiInvariant,
    UnsupportedDimension,
    ZeroDivisor,
    ZeroEquation,
)
from models import (
    AdmissibleWeight,
    BoundaryDivisor,
    Certificate,
    Check,
    CtBound,
    CyclicAction,
    ExtRat,
    HyperquotientGerm,
    IntVector,
    PLUS_INFINITY,
    PatternReport,
    Poly,
    to_fraction,
)
from services import weights
from utils.parallel import partitioned_map

logger = logging.getLogger(__name__)


# Table rows keyed by the normal-form tag of the germ
TAG_CASES = {
    "cA_over_n": "1",
    "cD_41": "2.1",
    "cD_52": "2.2",
    "cD2_41": "3.1",
    "cD2_52": "3.2",
}


def character_of(action: CyclicAction, alpha: Sequence[int]) -> int:
    """Character of x^alpha: sum of a_i * alpha_i mod n."""
    if len(alpha) != action.dim:
        raise ValueError(f"exponent of length {len(alpha)} for an action on {action.dim} coordinates")
    return sum(a * e for a, e in zip(action.chars, alpha)) % action.n


def is_semi_invariant(action: CyclicAction, h: Poly) -> bool:
    return len({character_of(action, alpha) for alpha in h.terms}) <= 1


def is_well_formed(action: CyclicAction) -> bool:
    """No pseudo-reflections: dropping any one character leaves characters coprime to n."""
    for i in range(action.dim):
        g = action.n
        for j, a in enumerate(action.chars):
            if j != i:
                g = gcd(g, a)
        if g != 1:
            return False
    return True


# Admissible weights

def is_admissible(germ: HyperquotientGerm, numerators: Sequence[int]) -> Optional[int]:
    """
    Least b in [0, n) with w_i = b * a_i mod n for every i, or None.
    """
    if len(numerators) != germ.dim:
        raise ValueError(f"{len(numerators)} weight numerators for dimension {germ.dim}")
    if any(w <= 0 for w in numerators):
        raise ValueError("weight numerators must be positive")
    n = germ.order
    for b in range(n):
        if all((w - b * a) % n == 0 for w, a in zip(numerators, germ.action.chars)):
            return b
    return None


def admissible_weight(germ: HyperquotientGerm, numerators: Sequence[int]) -> AdmissibleWeight:
    b = is_admissible(germ, numerators)
    if b is None:
        raise NotAdmissible(
            f"weight {tuple(numerators)} is not admissible for 1/{germ.order}{germ.action.chars}"
        )
    return AdmissibleWeight(numerators=tuple(numerators), denominator=germ.order, witness_b=b)


def _check_weight(germ: HyperquotientGerm, w: AdmissibleWeight) -> None:
    n = germ.order
    if w.denominator != n or len(w.numerators) != germ.dim:
        raise NotAdmissible(f"weight with denominator {w.denominator} does not fit 1/{n}{germ.action.chars}")
    if any((x - w.witness_b * a) % n for x, a in zip(w.numerators, germ.action.chars)):
        raise NotAdmissible(f"witness b={w.witness_b} does not satisfy the congruences for {w.numerators}")


def _positive_vectors(dim: int, total: int, prefix: List[int], out: List[IntVector]) -> None:
    remaining = dim - len(prefix)
    if remaining == 0:
        out.append(tuple(prefix))
        return
    # leave at least 1 for each later coordinate
    for value in range(1, total - (remaining - 1) + 1):
        prefix.append(value)
        _positive_vectors(dim, total - value, prefix, out)
        prefix.pop()


def enumerate_admissible_weights(germ: HyperquotientGerm, max_total: int) -> List[AdmissibleWeight]:
    """All admissible weights with sum of numerators at most max_total, lexicographically."""
    if max_total < 1:
        raise ValueError("max_total must be positive")
    d = germ.dim
    if max_total < d:
        return []

    def branch(first: int) -> List[AdmissibleWeight]:
        vectors: List[IntVector] = []
        _positive_vectors(d, max_total - first, [first], vectors)
        found = []
        for vec in vectors:
            b = is_admissible(germ, vec)
            if b is not None:
                found.append(AdmissibleWeight(numerators=vec, denominator=germ.order, witness_b=b))
        return found

    result: List[AdmissibleWeight] = []
    for chunk in partitioned_map(branch, range(1, max_total - d + 2)):
        result.extend(chunk)
    logger.debug(f"{len(result)} admissible weights with total <= {max_total}")
    return result


# Discrepancies

def germ_weight_discrepancy(germ: HyperquotientGerm, w: AdmissibleWeight) -> ExtRat:
    """w(X, x) = (1/n) sum w_i - sum w(phi_j) - 1."""
    _check_weight(germ, w)
    weight = w.weight
    total = sum(weight.entries, Fraction(0))
    for index, eq in enumerate(germ.eqs):
        if eq.is_zero:
            raise ZeroEquation(f"equation {index} is zero, its weight is +inf")
        total -= weights.weight_of_poly(weight, eq)
    return total - 1


def boundary_weight(germ: HyperquotientGerm, boundary: Sequence[BoundaryDivisor], w: AdmissibleWeight) -> Fraction:
    """w(B) = sum of b_i * w(h_i)."""
    _check_weight(germ, w)
    weight = w.weight
    total = Fraction(0)
    for index, divisor in enumerate(boundary):
        if divisor.defining.is_zero:
            raise ZeroDivisor(f"boundary divisor {index} has zero defining equation")
        if divisor.defining.dim != germ.dim:
            raise ValueError(f"boundary divisor {index} has dimension {divisor.defining.dim}, expected {germ.dim}")
        if not is_semi_invariant(germ.action, divisor.defining):
            raise NotSemiInvariant(f"boundary divisor {index} is not semi-invariant under the action")
        total += divisor.coeff * weights.weight_of_poly(weight, divisor.defining)
    return total


def log_discrepancy(germ: HyperquotientGerm, boundary: Sequence[BoundaryDivisor], w: AdmissibleWeight) -> ExtRat:
    """a(E, X, B) = 1 + w(X, x) - w(B) for the exceptional divisor of the weighted blow-up."""
    return 1 + germ_weight_discrepancy(germ, w) - boundary_weight(germ, boundary, w)


def ct_upper_bound(germ: HyperquotientGerm, divisor: BoundaryDivisor, max_total: int) -> CtBound:
    """
    Upper bound for the canonical threshold of D at the point.

    Every enumerated weight gives t <= w(X, x) / w(D); the minimum and the first
    weight attaining it are returned. A divisor missing the point (w(D) = 0)
    imposes nothing.
    """
    if divisor.defining.is_zero:
        raise ZeroDivisor("the divisor D has zero defining equation")
    candidates = enumerate_admissible_weights(germ, max_total)
    if not candidates:
        raise EmptyEnumeration(f"no admissible weight with total <= {max_total}")

    best: ExtRat = PLUS_INFINITY
    best_weight = None
    for w in candidates:
        w_d = weights.weight_of_poly(w.weight, divisor.defining)
        if w_d == 0:
            continue
        ratio = germ_weight_discrepancy(germ, w) / w_d
        if ratio < best:
            best, best_weight = ratio, w
    logger.info(f"ct upper bound {best} from {len(candidates)} weights (budget {max_total})")
    return CtBound(value=best, weight=best_weight, budget=max_total)


def coefficient_sum_check(is_smooth: bool, coeffs: Sequence) -> bool:
    """Sum of boundary coefficients is at most 2 at a smooth point and at most 1 otherwise."""
    values = [to_fraction(c) for c in coeffs]
    if any(c < 0 for c in values):
        raise ValueError("coefficients must be non-negative")
    return sum(values, Fraction(0)) <= (2 if is_smooth else 1)


def codim2_mld(mult) -> Optional[Fraction]:
    """mld = 2 - mult at a codimension two point when mult <= 1; None (undefined) otherwise."""
    mult = to_fraction(mult)
    if mult > 1:
        return None
    return 2 - mult


# Weight table patterns

def _exp(dim: int, **powers: int) -> IntVector:
    """Exponent vector from keyword powers x1=.., x2=.. (1-based names)."""
    alpha = [0] * dim
    for name, power in powers.items():
        alpha[int(name[1:]) - 1] = power
    return tuple(alpha)


def _has(poly: Poly, alpha: IntVector) -> bool:
    return alpha in poly.terms


def _detect_case(germ: HyperquotientGerm) -> Optional[str]:
    if germ.tag in TAG_CASES:
        return TAG_CASES[germ.tag]
    n = germ.order
    if germ.dim == 4 and len(germ.eqs) == 1:
        if _has(germ.eqs[0], _exp(4, x1=1, x2=1)):
            return "1"
        if n == 1:
            return "2.1"
        if n == 2:
            return "3.1"
    if germ.dim == 5 and len(germ.eqs) == 2:
        if n == 1:
            return "2.2"
        if n == 2:
            return "3.2"
    return None


def _q_terms_weight(poly: Poly, weight, selector) -> Optional[Fraction]:
    """Weight of the sub-sum of terms picked by selector, None when there are none."""
    picked = {alpha: c for alpha, c in poly.terms.items() if selector(alpha)}
    if not picked:
        return None
    return weights.weight_of_poly(weight, Poly(dim=poly.dim, terms=picked))


def _pattern_case_1(germ: HyperquotientGerm, w: AdmissibleWeight) -> List[Check]:
    n = germ.order
    phi = germ.eqs[0]
    r1, r2, a, w4 = w.numerators
    chars = germ.action.chars
    b = chars[2]
    checks = [
        Check(name="action 1/n(1,-1,b,0)",
              passed=chars[0] == 1 % n and chars[1] == (-1) % n and chars[3] == 0 and gcd(b, n) == 1,
              detail=f"chars={chars}"),
        Check(name="w4 = 1", passed=w4 == n, detail=f"w4={Fraction(w4, n)}"),
    ]
    w_phi = weights.weight_of_poly(w.weight, phi)
    checks.append(Check(name="n w(phi) = r1 + r2", passed=n * w_phi == r1 + r2, detail=f"n w(phi)={n * w_phi}, r1+r2={r1 + r2}"))
    divisible = (r1 + r2) % (a * n) == 0
    checks.append(Check(name="r1 + r2 = a d n", passed=divisible, detail=f"r1+r2={r1 + r2}, a n={a * n}"))
    checks.append(Check(name="a = b r1 mod n", passed=(a - b * r1) % n == 0, detail=f"a={a}, b={b}, r1={r1}"))
    checks.append(Check(name="x1x2 in phi", passed=_has(phi, _exp(4, x1=1, x2=1))))
    g_support = [alpha for alpha in phi.terms if alpha != _exp(4, x1=1, x2=1)]
    checks.append(Check(
        name="g = g(x3^n, x4)",
        passed=all(alpha[0] == 0 and alpha[1] == 0 and alpha[2] % n == 0 for alpha in g_support),
    ))
    if divisible:
        d = (r1 + r2) // (a * n)
        checks.append(Check(name="x3^(dn) in g", passed=_has(phi, _exp(4, x3=d * n)), detail=f"d={d}"))
    return checks


def _pattern_case_21(germ: HyperquotientGerm, w: AdmissibleWeight) -> List[Check]:
    phi = germ.eqs[0]
    w1, r, a, w4 = w.numerators
    target = 2 * r + 1
    weight = w.weight
    checks = [
        Check(name="n = 1", passed=germ.order == 1),
        Check(name="w = (r+1, r, a, 1)", passed=w1 == r + 1 and w4 == 1, detail=f"w={w.numerators}"),
        Check(name="x1^2 in phi", passed=_has(phi, _exp(4, x1=2))),
        Check(name="x2^2x4 in phi", passed=_has(phi, _exp(4, x2=2, x4=1))),
    ]
    w_phi = weights.weight_of_poly(weight, phi)
    checks.append(Check(name="w(phi) = 2r+1", passed=w_phi == target, detail=f"w(phi)={w_phi}"))
    checks.append(Check(name="a odd", passed=a % 2 == 1))
    divisible = target % a == 0
    d = target // a if divisible else None
    checks.append(Check(
        name="2r+1 = a d, d odd >= 3",
        passed=divisible and d % 2 == 1 and d >= 3,
        detail=f"2r+1={target}, a={a}",
    ))
    if d is not None:
        checks.append(Check(name="x3^d in phi", passed=_has(phi, _exp(4, x3=d)), detail=f"d={d}"))
    q_weight = _q_terms_weight(phi, weight, lambda alpha: alpha[0] == 1 and alpha[1] == 0)
    if q_weight is not None:
        checks.append(Check(name="w(x1 q) = 2r+1", passed=q_weight == target, detail=f"w(x1 q)={q_weight}"))
    if d is not None and d > 3:
        lam = _has(phi, _exp(4, x2=1, x3=2))
        mu = _has(phi, _exp(4, x3=3))
        checks.append(Check(name="d > 3 forces lambda = mu = 0", passed=not lam and not mu))
    return checks


def _pattern_case_22(germ: HyperquotientGerm, w: AdmissibleWeight) -> List[Check]:
    phi1, phi2 = germ.eqs
    w1, r, a, w4, w5 = w.numerators
    weight = w.weight
    checks = [
        Check(name="n = 1", passed=germ.order == 1),
        Check(name="w = (r+1, r, a, 1, r+2)", passed=w1 == r + 1 and w4 == 1 and w5 == r + 2, detail=f"w={w.numerators}"),
        Check(name="x1^2, x2x5 in phi1", passed=_has(phi1, _exp(5, x1=2)) and _has(phi1, _exp(5, x2=1, x5=1))),
        Check(name="x2x4 in phi2", passed=_has(phi2, _exp(5, x2=1, x4=1))),
    ]
    divisible = (r + 1) % a == 0
    d = (r + 1) // a if divisible else None
    checks.append(Check(name="r+1 = a d, d >= 2", passed=divisible and d >= 2, detail=f"r+1={r + 1}, a={a}"))
    if d is not None:
        checks.append(Check(name="x3^d in phi2", passed=_has(phi2, _exp(5, x3=d)), detail=f"d={d}"))
    w_phi1 = weights.weight_of_poly(weight, phi1)
    w_phi2 = weights.weight_of_poly(weight, phi2)
    checks.append(Check(name="w(phi1) = 2(r+1)", passed=w_phi1 == 2 * (r + 1), detail=f"w(phi1)={w_phi1}"))
    checks.append(Check(name="w(phi2) = r+1", passed=w_phi2 == r + 1, detail=f"w(phi2)={w_phi2}"))
    q_weight = _q_terms_weight(
        phi2, weight,
        lambda alpha: alpha[0] == 0 and alpha[1] == 0 and alpha[4] == 0 and alpha[3] >= 1,
    )
    if q_weight is not None:
        checks.append(Check(name="w(q x4) = r+1", passed=q_weight == r + 1, detail=f"w(q x4)={q_weight}"))
    return checks


def _pattern_case_31(germ: HyperquotientGerm, w: AdmissibleWeight) -> List[Check]:
    phi = germ.eqs[0]
    w1, r, a, w4 = w.numerators
    weight = w.weight
    checks = [
        Check(name="action 1/2(1,1,1,0)", passed=germ.order == 2 and germ.action.chars == (1, 1, 1, 0)),
        Check(name="w = 1/2(r+2, r, a, 2)", passed=w1 == r + 2 and w4 == 2, detail=f"w={w.numerators}/2"),
        Check(name="x1^2 in phi", passed=_has(phi, _exp(4, x1=2))),
        Check(name="x2^2x4 in phi", passed=_has(phi, _exp(4, x2=2, x4=1))),
        Check(name="a, r odd", passed=a % 2 == 1 and r % 2 == 1),
    ]
    w_phi = weights.weight_of_poly(weight, phi)
    checks.append(Check(name="w(phi) = r+1", passed=w_phi == r + 1, detail=f"w(phi)={w_phi}"))
    divisible = (r + 1) % a == 0
    d = (r + 1) // a if divisible else None
    checks.append(Check(name="r+1 = a d", passed=divisible, detail=f"r+1={r + 1}, a={a}"))
    if d is not None:
        checks.append(Check(name="x3^(2d) in p", passed=_has(phi, _exp(4, x3=2 * d)), detail=f"d={d}"))
    q_weight = _q_terms_weight(phi, weight, lambda alpha: alpha[0] == 1 and alpha[1] == 0)
    if q_weight is not None:
        checks.append(Check(name="w(x1 x3 q) = r+1", passed=q_weight == r + 1, detail=f"w(x1 x3 q)={q_weight}"))
    return checks


def _pattern_case_32(germ: HyperquotientGerm, w: AdmissibleWeight) -> List[Check]:
    phi1, phi2 = germ.eqs
    w1, r, a, w4, w5 = w.numerators
    weight = w.weight
    checks = [
        Check(name="action 1/2(1,1,1,0,1)", passed=germ.order == 2 and germ.action.chars == (1, 1, 1, 0, 1)),
        Check(name="w = 1/2(r+2, r, a, 2, r+4)", passed=w1 == r + 2 and w4 == 2 and w5 == r + 4, detail=f"w={w.numerators}/2"),
        Check(name="x1^2, x2x5 in phi1", passed=_has(phi1, _exp(5, x1=2)) and _has(phi1, _exp(5, x2=1, x5=1))),
        Check(name="x2x4 in phi2", passed=_has(phi2, _exp(5, x2=1, x4=1))),
    ]
    divisible = (r + 2) % a == 0
    d = (r + 2) // a if divisible else None
    checks.append(Check(name="r+2 = a d, d odd", passed=divisible and d % 2 == 1, detail=f"r+2={r + 2}, a={a}"))
    if d is not None:
        checks.append(Check(name="x3^d in phi2", passed=_has(phi2, _exp(5, x3=d)), detail=f"d={d}"))
    w_phi1 = weights.weight_of_poly(weight, phi1)
    w_phi2 = weights.weight_of_poly(weight, phi2)
    checks.append(Check(name="w(phi1) = r+2", passed=w_phi1 == r + 2, detail=f"w(phi1)={w_phi1}"))
    checks.append(Check(name="w(phi2) = (r+2)/2", passed=w_phi2 == Fraction(r + 2, 2), detail=f"w(phi2)={w_phi2}"))
    q_weight = _q_terms_weight(
        phi2, weight,
        lambda alpha: alpha[0] == 0 and alpha[1] == 0 and alpha[4] == 0 and alpha[2] % 2 == 1 and alpha[3] >= 1,
    )
    if q_weight is not None:
        checks.append(Check(name="w(q x3 x4) = (r+2)/2", passed=q_weight == Fraction(r + 2, 2), detail=f"w(q x3 x4)={q_weight}"))
    return checks


PATTERN_CHECKS = {
    "1": _pattern_case_1,
    "2.1": _pattern_case_21,
    "2.2": _pattern_case_22,
    "3.1": _pattern_case_31,
    "3.2": _pattern_case_32,
}


def check_kawakita_pattern(germ: HyperquotientGerm, w: AdmissibleWeight) -> PatternReport:
    """
    Match (germ, w) against the rows of the divisorial contraction weight table.

    Reports every side condition of the matched row. A germ without equations
    has no row (case None).
    """
    if not germ.eqs:
        return PatternReport(case=None, checks=(Check(name="equations", passed=False, detail="germ has no equations"),))
    if germ.dim not in (4, 5):
        raise UnsupportedDimension(f"weight table rows live in dimension 4 or 5, not {germ.dim}")
    _check_weight(germ, w)
    case = _detect_case(germ)
    if case is None:
        return PatternReport(case=None, checks=(Check(name="shape", passed=False, detail="no row matches the germ"),))
    expected_eqs = 1 if case in ("1", "2.1", "3.1") else 2
    expected_dim = 4 if expected_eqs == 1 else 5
    if germ.dim != expected_dim or len(germ.eqs) != expected_eqs:
        return PatternReport(case=None, checks=(Check(
            name="shape", passed=False,
            detail=f"case {case} needs {expected_eqs} equation(s) in dimension {expected_dim}",
        ),))
    checks = PATTERN_CHECKS[case](germ, w)
    report = PatternReport(case=case, checks=tuple(checks))
    logger.debug(f"Pattern case {case} for weight {w.numerators}: {'pass' if report.passed else 'fail'}")
    return report


# Irreducibility certificates

def _support(poly: Poly) -> set:
    return set(poly.terms)


def _shape_matches(leading: Poly, required: set, optional: set = frozenset()) -> bool:
    support = _support(leading)
    return required <= support and support <= (required | set(optional))


def _certify_case_1(germ, w, leads) -> Optional[tuple[Fraction, str]]:
    n = germ.order
    s1, s2, a, w4 = w.numerators
    b = germ.action.chars[2]
    if w4 != n or (s1 + s2) % (a * n) != 0 or (a - b * s1) % n != 0:
        return None
    d = (s1 + s2) // (a * n)
    lead = leads[0]
    x1x2 = _exp(4, x1=1, x2=1)
    support = _support(lead)
    others_ok = all(alpha[0] == 0 and alpha[1] == 0 for alpha in support - {x1x2})
    if x1x2 in support and _exp(4, x3=n * d) in support and others_ok:
        return Fraction(a, n), f"x1x2 + g(x3, x4) with x3^{n * d}"
    return None


def _certify_case_21(germ, w, leads) -> Optional[tuple[Fraction, str]]:
    w1, w2, w3, w4 = w.numerators
    lead = leads[0]
    if w1 == w2 + 1 and w4 == 1:
        r, a = w2, w3
        if (2 * r + 1) % a != 0:
            return None
        d = (2 * r + 1) // a
        if d % 2 == 1 and _shape_matches(lead, {_exp(4, x2=2, x4=1), _exp(4, x3=d)}):
            return Fraction(a), f"x2^2x4 + x3^{d}"
    if w1 == w2 and w3 == 2 and w4 == 1:
        d = w1
        if d % 2 == 1 and _shape_matches(lead, {_exp(4, x1=2), _exp(4, x3=d)}):
            return Fraction(2), f"x1^2 + x3^{d}"
    return None


def _certify_case_22(germ, w, leads) -> Optional[tuple[Fraction, str]]:
    w1, w2, w3, w4, w5 = w.numerators
    lead1, lead2 = leads
    if w1 == w2 + 1 and w4 == 1 and w5 == w2 + 2:
        r, a = w2, w3
        if (r + 1) % a != 0:
            return None
        d = (r + 1) // a
        first = _shape_matches(
            lead1,
            {_exp(5, x1=2), _exp(5, x2=1, x5=1)},
            {_exp(5, x3=2 * d), _exp(5, x2=1, x3=d, x4=1), _exp(5, x2=2, x4=2)},
        )
        second = _shape_matches(lead2, {_exp(5, x2=1, x4=1), _exp(5, x3=d)})
        if first and second:
            return Fraction(a), f"x2x4 + x3^{d}"
    if w1 == w2 == w5 and w3 == 1 and w4 == 1:
        d = w1
        first = _shape_matches(lead1, {_exp(5, x1=2), _exp(5, x2=1, x5=1)}, {_exp(5, x3=2 * d)})
        second = _shape_matches(lead2, {_exp(5, x5=1), _exp(5, x3=d)})
        if first and second:
            return Fraction(1), f"x5 + x3^{d}"
    return None


def _certify_case_31(germ, w, leads) -> Optional[tuple[Fraction, str]]:
    w1, r, a, w4 = w.numerators
    if w1 != r + 2 or w4 != 2 or (r + 1) % a != 0:
        return None
    d = (r + 1) // a
    if _shape_matches(leads[0], {_exp(4, x2=2, x4=1), _exp(4, x3=2 * d)}):
        return Fraction(a, 2), f"x2^2x4 + x3^{2 * d}"
    return None


def _certify_case_32(germ, w, leads) -> Optional[tuple[Fraction, str]]:
    w1, r, a, w4, w5 = w.numerators
    if w1 != r + 2 or w4 != 2 or w5 != r + 4 or (r + 2) % a != 0:
        return None
    d = (r + 2) // a
    first = _shape_matches(leads[0], {_exp(5, x1=2), _exp(5, x2=1, x5=1)}, {_exp(5, x3=2 * d)})
    second = _shape_matches(leads[1], {_exp(5, x2=1, x4=1), _exp(5, x3=d)})
    if first and second:
        return Fraction(a, 2), f"x2x4 + x3^{d}"
    return None


CERTIFIERS = {
    "1": _certify_case_1,
    "2.1": _certify_case_21,
    "2.2": _certify_case_22,
    "3.1": _certify_case_31,
    "3.2": _certify_case_32,
}


def irreducibility_certificate(germ: HyperquotientGerm, w: AdmissibleWeight) -> Certificate:
    """
    Certify that the weighted blow-up extracts a prime divisor.

    The leading terms of the equations are matched against the integral target
    shapes known for each classified normal form; on a match the predicted
    w(X, x) is returned and cross-checked against the discrepancy formula.
    Anything else is Unknown.
    """
    _check_weight(germ, w)
    if not germ.eqs:
        predicted = sum(w.weight.entries, Fraction(0)) - 1
        return _confirmed(germ, w, Certificate(
            status="certified", case="quotient", predicted=predicted,
            reason="exceptional divisor is a quotient of weighted projective space",
        ))
    if germ.tag not in TAG_CASES:
        return Certificate(status="unknown", reason="germ carries no classified normal-form tag")
    case = TAG_CASES[germ.tag]
    expected = (4, 1) if case in ("1", "2.1", "3.1") else (5, 2)
    if (germ.dim, len(germ.eqs)) != expected:
        return Certificate(status="unknown", case=case, reason=f"tag {germ.tag} needs {expected[1]} equation(s) in dimension {expected[0]}")
    if any(eq.is_zero for eq in germ.eqs):
        raise ZeroEquation("cannot take leading terms of a zero equation")

    leads = tuple(weights.leading_term(w.weight, eq) for eq in germ.eqs)
    matched = CERTIFIERS[case](germ, w, leads)
    if matched is None:
        return Certificate(status="unknown", case=case, leading_terms=leads,
                           reason="leading terms do not have a certified integral shape")
    predicted, shape = matched
    return _confirmed(germ, w, Certificate(
        status="certified", case=case, predicted=predicted, leading_terms=leads,
        reason=f"leading terms of shape {shape}",
    ))


def _confirmed(germ: HyperquotientGerm, w: AdmissibleWeight, certificate: Certificate) -> Certificate:
    direct = germ_weight_discrepancy(germ, w)
    if direct != certificate.predicted:
        raise CertificateMismatch(
            f"certificate predicts {certificate.predicted} but the discrepancy formula gives {direct}"
        )
    return certificate
