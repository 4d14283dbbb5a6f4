import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Optional, Sequence

from errors import AmbiguousF, NotCoprime, SideConditionViolated
from models import (
    BasketConfig,
    ChiDifference,
    Check,
    DeltaReport,
    FamilyReport,
    FictitiousPoint,
    IntersectionData,
)

logger = logging.getLogger(__name__)


def residue(m: int, n: int) -> int:
    """m - floor(m/n) n, always in [0, n)."""
    if n < 1:
        raise ValueError("modulus must be positive")
    return m % n


def gen_sum(terms: Callable[[int], Fraction], start: int, stop: int) -> Fraction:
    """
    Generalized sum of terms(i) for i from start to stop.

    An empty range (stop = start - 1) sums to 0 and a reversed range sums to
    minus the terms strictly between stop and start.
    """
    if stop >= start:
        return sum((Fraction(terms(i)) for i in range(start, stop + 1)), Fraction(0))
    return -sum((Fraction(terms(i)) for i in range(stop + 1, start)), Fraction(0))


def _require_coprime(r: int, b: int) -> None:
    if r < 1:
        raise ValueError("index r must be positive")
    if gcd(b, r) != 1:
        raise NotCoprime(f"b={b} is not coprime to r={r}")


@lru_cache(maxsize=4096)
def _prefix_numerators(r: int, b: int, v: int) -> tuple[int, ...]:
    """prefix[k] = sum over j = 1..k of rho (r - rho) with rho = (j b - v) mod r, for k in 0..r."""
    prefix = [0]
    for j in range(1, r + 1):
        rho = (j * b - v) % r
        prefix.append(prefix[-1] + rho * (r - rho))
    return tuple(prefix)


def _periodic_sum(r: int, b: int, v: int, x: int) -> Fraction:
    """
    G(x) with G(x) - G(x-1) = B(x b - v) and G(0) = 0, for every integer x.

    The generalized sum of B(j b - v) over j in [s, t] is G(t) - G(s - 1).
    """
    prefix = _prefix_numerators(r, b % r, v % r)
    whole, rest = divmod(x, r)
    return Fraction(whole * prefix[r] + prefix[rest], 2 * r)


def basket_b(r: int, i: int) -> Fraction:
    """B_Q(i) = (i mod r)(r - (i mod r)) / 2r, even with period r."""
    rho = residue(i, r)
    return Fraction(rho * (r - rho), 2 * r)


def basket_a(r: int, b: int, i: int) -> Fraction:
    """A_Q(i) = -i(r^2 - 1)/12r + sum over j = 1..i-1 of B_Q(j b), generalized for i <= 0."""
    _require_coprime(r, b)
    return Fraction(-i * (r * r - 1), 12 * r) + _periodic_sum(r, b, 0, i - 1)


def c_point(r: int, b: int, i: int) -> Fraction:
    """Singular Riemann-Roch correction c_Q(D) at a point 1/r(1,-1,b) with D ~ iK."""
    return basket_a(r, b, i)


def _point_delta(point: FictitiousPoint, i: int) -> Fraction:
    r, b, d, v = point.r, point.b, point.d_class, point.v
    start, stop = i * d, (i + 1) * d - 1
    plain = _periodic_sum(r, b, 0, stop) - _periodic_sum(r, b, 0, start - 1)
    shifted = _periodic_sum(r, b, v, stop) - _periodic_sum(r, b, v, start - 1)
    return plain - shifted


def delta_difference(config: BasketConfig, i: int) -> Fraction:
    """Sum over both points of B(j b) - B(j b - v) for j from i d to (i+1) d - 1."""
    return sum((_point_delta(point, i) for point in config.points), Fraction(0))


def _delta(r: int, i: int) -> int:
    return 1 if i % r == 0 else 0


def verify_delta_identity(config: BasketConfig, r: int, imax: int) -> DeltaReport:
    """Check delta_r(i+1) - delta_r(i) = delta_difference(config, i) for i in [0, imax]."""
    if r < 1:
        raise ValueError("r must be positive")
    if imax < 0:
        raise ValueError("imax must be non-negative")
    violations = tuple(
        i for i in range(imax + 1)
        if _delta(r, i + 1) - _delta(r, i) != delta_difference(config, i)
    )
    if violations:
        logger.debug(f"Delta identity fails for r={r} at {len(violations)} indices, first {violations[0]}")
    return DeltaReport(r=r, imax=imax, violations=violations)


def index_from_basket(r1: int, d1: int, r2: int, d2: int) -> int:
    """r = lcm(r1 / gcd(r1, d1), r2 / gcd(r2, d2))."""
    if min(r1, d1, r2, d2) < 1:
        raise ValueError("basket data must be positive")
    return lcm(r1 // gcd(r1, d1), r2 // gcd(r2, d2))


def check_divisibility_conclusion(config: BasketConfig, r: int) -> bool:
    """r divides gcd(r1, r2), for configurations with r | n and n | r1 + r2."""
    if r < 1:
        raise ValueError("r must be positive")
    if config.n % r != 0:
        raise SideConditionViolated(f"r={r} does not divide n={config.n}")
    if (config.r1 + config.r2) % config.n != 0:
        raise SideConditionViolated(f"n={config.n} does not divide r1 + r2 = {config.r1 + config.r2}")
    return gcd(config.r1, config.r2) % r == 0


def remark_family(rparam: int) -> FamilyReport:
    """
    The two-point basket family with ambient index n = r(4r^2 - 2r - 1).

    Every member satisfies the divisibility side conditions while r1 and r2
    grow without bound; the report lists each condition separately.
    """
    if rparam < 2:
        raise ValueError("the family starts at r = 2")
    r = rparam
    n = r * (4 * r * r - 2 * r - 1)
    a = r
    b = 4 * r * r + 2 * r - 1
    r1 = (2 * r - 1) ** 2 * r * r
    r2 = 2 * r * r * (r - 1)
    config = BasketConfig(
        n=n,
        a=a,
        b_amb=b,
        points=(
            FictitiousPoint(r=r1, b=4 * r ** 3 - r + 1, d_class=r1, v=1),
            FictitiousPoint(r=r2, b=2 * r * r - 1, d_class=2 * r * (r - 1), v=1),
        ),
    )
    numerator = a - b * r1
    checks = (
        Check(name="r | n", passed=n % r == 0, detail=f"n={n}"),
        Check(name="gcd(b, n) = 1", passed=gcd(b, n) == 1, detail=f"b={b}"),
        Check(name="n | a - b r1", passed=numerator % n == 0, detail=f"a - b r1={numerator}"),
        Check(name="a n | r1 + r2", passed=(r1 + r2) % (a * n) == 0, detail=f"r1 + r2={r1 + r2}"),
        Check(
            name="gcd((a - b r1)/n, r1) = 1",
            passed=numerator % n == 0 and gcd(numerator // n, r1) == 1,
        ),
    )
    return FamilyReport(rparam=rparam, config=config, checks=checks)


def recover_f(point: FictitiousPoint, sign: str = "+") -> tuple[int, str]:
    """
    f in [0, r) with f b = v mod r ("+") or f b = -v mod r ("-").

    v records f b only up to sign, so both branches are valid reconstructions
    and "+" is the default. Validated points have b invertible mod r; AmbiguousF
    is raised for points built without that check.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {sign!r}")
    if point.r == 1:
        return 0, sign
    try:
        inverse = pow(point.b, -1, point.r)
    except ValueError:
        raise AmbiguousF(f"no f in [0, {point.r}) with f*{point.b} = {sign}{point.v} mod {point.r}")
    target = point.v if sign == "+" else -point.v
    return (target * inverse) % point.r, sign


def chi_difference(
    config: BasketConfig,
    data: IntersectionData,
    i: int,
    m: int,
    branches: Optional[Sequence[str]] = None,
) -> ChiDifference:
    """
    chi(O(D)) - chi(O(D - E)) for D = i m (K + B), from caller-supplied intersection numbers.

    Delta_1 = E^3/6 + E^2.K/4 and Delta_2 = sum over the points of
    A_Q(i d) - A_Q(i d - f). f is recovered on the "+" branch unless `branches`
    forces the sign per point; the branches used are reported.
    """
    if m < 1:
        raise ValueError("m must be positive")
    delta1 = data.e3 / 6 + data.e2k / 4
    delta2 = Fraction(0)
    f_values, signs = [], []
    for index, point in enumerate(config.points):
        f, sign = recover_f(point, "+" if branches is None else branches[index])
        f_values.append(f)
        signs.append(sign)
        start = i * point.d_class
        delta2 += basket_a(point.r, point.b, start) - basket_a(point.r, point.b, start - f)
    value = delta1 + delta2 + data.ec2 / 12
    return ChiDifference(
        value=value,
        delta1=delta1,
        delta2=delta2,
        f_values=tuple(f_values),
        branches=tuple(signs),
        m=m,
    )
