from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


IntVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction; floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected an exact rational, got {value!r}")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {value!r}")
    except (TypeError, ValueError):
        raise ValueError(f"not a rational: {value!r}")


@total_ordering
class Infinity:
    """Signed infinity that orders beyond every Fraction."""

    __slots__ = ("sign",)

    def __init__(self, sign: int = 1):
        self.sign = 1 if sign > 0 else -1

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self):
        return hash(("Infinity", self.sign))

    def __add__(self, other):
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ArithmeticError("+inf + -inf is undefined")
        return self

    __radd__ = __add__

    def __neg__(self):
        return Infinity(-self.sign)

    def __str__(self):
        return "+inf" if self.sign > 0 else "-inf"

    __repr__ = __str__


PLUS_INFINITY = Infinity(1)
NEG_INFINITY = Infinity(-1)

# Infinity is tried first; the Fraction validator does not reject it cleanly
ExtRat = Annotated[Union[Infinity, Fraction], Field(union_mode="left_to_right")]


class DomainModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class Check(DomainModel):
    name: str
    passed: bool
    detail: str = ""


# lattice-core

class HermiteDecomposition(DomainModel):
    h: IntMatrix
    u: IntMatrix
    rank: int

    @property
    def full_rank(self) -> bool:
        return self.rank == len(self.h)


class LinearSolution(DomainModel):
    status: Literal["solution", "inconsistent", "underdetermined"]
    values: Optional[tuple[Fraction, ...]] = None  # particular solution, free variables set to 0
    free_count: int = 0


class Constraint(DomainModel):
    """<covector, x> <= bound, or < bound when strict."""
    covector: tuple[Fraction, ...]
    bound: Fraction
    strict: bool = False

    @field_validator("covector", mode="before")
    @classmethod
    def _coerce_covector(cls, value):
        return tuple(to_fraction(c) for c in value)

    @field_validator("bound", mode="before")
    @classmethod
    def _coerce_bound(cls, value):
        return to_fraction(value)


# newton

class NewtonPolytope(DomainModel):
    dim: int
    vertices: tuple[IntVector, ...] = ()

    @model_validator(mode="after")
    def _check_vertices(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        for v in self.vertices:
            if len(v) != self.dim:
                raise ValueError(f"vertex {v} does not have length {self.dim}")
        return self

    @property
    def is_empty(self) -> bool:
        return not self.vertices


# weighted-calculus

class Poly(DomainModel):
    """Finite-support polynomial: exponent vector -> nonzero rational coefficient."""
    dim: int
    terms: dict[IntVector, Fraction] = {}

    @field_validator("terms", mode="before")
    @classmethod
    def _drop_zero_terms(cls, value):
        cleaned = {}
        for alpha, coeff in dict(value).items():
            c = to_fraction(coeff)
            if c != 0:
                cleaned[tuple(int(a) for a in alpha)] = c
        return cleaned

    @model_validator(mode="after")
    def _check_exponents(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        for alpha in self.terms:
            if len(alpha) != self.dim:
                raise ValueError(f"exponent {alpha} does not have length {self.dim}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
        return self

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[IntVector]:
        return sorted(self.terms)


class Weight(DomainModel):
    entries: tuple[Fraction, ...]

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce_entries(cls, value):
        entries = tuple(to_fraction(e) for e in value)
        if not entries:
            raise ValueError("weight must have at least one entry")
        if any(e <= 0 for e in entries):
            raise ValueError(f"weight entries must be positive: {[str(e) for e in entries]}")
        return entries

    @property
    def dim(self) -> int:
        return len(self.entries)


class WeightComparison(DomainModel):
    geq: bool
    scalar: Optional[Fraction] = None  # mu with w = mu * w2, when it exists

    @property
    def incomparable(self) -> bool:
        return not self.geq and self.scalar is None


# germs

GermTag = Literal["Smooth", "cA_over_n", "cD_41", "cD_52", "cD2_41", "cD2_52"]


class CyclicAction(DomainModel):
    n: int
    chars: IntVector

    @model_validator(mode="before")
    @classmethod
    def _normalize_chars(cls, data):
        if isinstance(data, dict) and "n" in data and "chars" in data:
            n = int(data["n"])
            if n < 1:
                raise ValueError("the order of the action must be positive")
            data = {**data, "chars": tuple(int(a) % n for a in data["chars"])}
        return data

    @property
    def dim(self) -> int:
        return len(self.chars)


class HyperquotientGerm(DomainModel):
    dim: int
    action: CyclicAction
    eqs: tuple[Poly, ...] = ()
    tag: Optional[GermTag] = None

    @model_validator(mode="after")
    def _check_germ(self):
        if self.action.dim != self.dim:
            raise ValueError(f"action has {self.action.dim} characters for dimension {self.dim}")
        if len(self.eqs) >= self.dim:
            raise ValueError("a germ needs fewer equations than ambient coordinates")
        for index, eq in enumerate(self.eqs):
            if eq.dim != self.dim:
                raise ValueError(f"equation {index} has dimension {eq.dim}, expected {self.dim}")
            characters = {
                sum(a * e for a, e in zip(self.action.chars, alpha)) % self.action.n
                for alpha in eq.terms
            }
            if len(characters) > 1:
                raise ValueError(f"equation {index} is not semi-invariant under the action")
        return self

    @property
    def order(self) -> int:
        return self.action.n


class BoundaryDivisor(DomainModel):
    coeff: Fraction
    defining: Poly

    @field_validator("coeff", mode="before")
    @classmethod
    def _coerce_coeff(cls, value):
        coeff = to_fraction(value)
        if coeff < 0:
            raise ValueError("boundary coefficients must be non-negative")
        return coeff


class AdmissibleWeight(DomainModel):
    numerators: IntVector
    denominator: int
    witness_b: int

    @model_validator(mode="after")
    def _check_numerators(self):
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        if any(w <= 0 for w in self.numerators):
            raise ValueError("weight numerators must be positive")
        return self

    @property
    def weight(self) -> Weight:
        return Weight(entries=tuple(Fraction(w, self.denominator) for w in self.numerators))


class PatternReport(DomainModel):
    case: Optional[str] = None  # None means no row of the weight table applies
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return self.case is not None and all(c.passed for c in self.checks)


class Certificate(DomainModel):
    status: Literal["certified", "unknown"]
    case: Optional[str] = None
    predicted: Optional[Fraction] = None
    leading_terms: tuple[Poly, ...] = ()
    reason: str = ""


class CtBound(DomainModel):
    """Upper bound for a canonical threshold; never an exact value."""
    value: ExtRat
    weight: Optional[AdmissibleWeight] = None
    budget: int
    kind: Literal["upper_bound"] = "upper_bound"


# toric-mld

class ToricGerm(DomainModel):
    dim: int
    rays: tuple[IntVector, ...]

    @model_validator(mode="after")
    def _check_rays(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not self.rays:
            raise ValueError("a cone needs at least one ray")
        for ray in self.rays:
            if len(ray) != self.dim:
                raise ValueError(f"ray {ray} does not have length {self.dim}")
            g = 0
            for c in ray:
                g = gcd(g, c)
            if g != 1:
                raise ValueError(f"ray {ray} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("rays must be distinct")
        return self

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim


class ToricPair(DomainModel):
    germ: ToricGerm
    coeffs: tuple[Fraction, ...]

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce_coeffs(cls, value):
        return tuple(to_fraction(c) for c in value)

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.coeffs) != len(self.germ.rays):
            raise ValueError(f"{len(self.coeffs)} coefficients for {len(self.germ.rays)} rays")
        return self


class PsiFunction(DomainModel):
    covector: tuple[Fraction, ...]

    def value(self, point) -> Fraction:
        return sum((c * x for c, x in zip(self.covector, point)), Fraction(0))


class QuotientCone(DomainModel):
    """Positive orthant of 1/n(a_1..a_d) rebased so that N becomes Z^d.

    A rebased point c has (1/n)-coordinates c . basis / n.
    """
    germ: ToricGerm
    order: int
    chars: IntVector
    basis: IntMatrix


class CaratheodoryFold(DomainModel):
    subset: tuple[int, ...]
    lambdas: tuple[Fraction, ...]
    folded_coeffs: tuple[Fraction, ...]
    folded_point: IntVector
    psi0_folded: Fraction


class MldResult(DomainModel):
    value: ExtRat
    witness: Optional[IntVector] = None
    psi0_witness: Optional[Fraction] = None
    fold: Optional[CaratheodoryFold] = None

    @property
    def is_lc(self) -> bool:
        return not isinstance(self.value, Infinity)


class AlctResult(DomainModel):
    value: ExtRat
    binding_ray: Optional[int] = None
    binding_point: Optional[IntVector] = None


class OrbitReduction(DomainModel):
    pair: ToricPair
    face: tuple[int, ...]
    codim: int
    torus_factor: int
    basis: IntMatrix


# reid-rr

class FictitiousPoint(DomainModel):
    r: int
    b: int
    d_class: int
    v: int

    @model_validator(mode="after")
    def _check_point(self):
        if self.r < 1:
            raise ValueError("index r must be positive")
        if gcd(self.b, self.r) != 1:
            raise ValueError(f"b={self.b} is not coprime to r={self.r}")
        if not 0 <= 2 * self.v <= self.r:
            raise ValueError(f"v={self.v} must lie in [0, r/2] for r={self.r}")
        return self


class BasketConfig(DomainModel):
    n: int
    a: int
    b_amb: int
    points: tuple[FictitiousPoint, FictitiousPoint]

    @model_validator(mode="after")
    def _check_config(self):
        if self.n < 1:
            raise ValueError("ambient index must be positive")
        if gcd(self.b_amb, self.n) != 1:
            raise ValueError(f"b={self.b_amb} is not coprime to n={self.n}")
        return self

    @property
    def r1(self) -> int:
        return self.points[0].r

    @property
    def r2(self) -> int:
        return self.points[1].r


class IntersectionData(DomainModel):
    e3: Fraction = Fraction(0)
    e2k: Fraction = Fraction(0)
    ec2: Fraction = Fraction(0)

    @field_validator("e3", "e2k", "ec2", mode="before")
    @classmethod
    def _coerce(cls, value):
        return to_fraction(value)


class DeltaReport(DomainModel):
    r: int
    imax: int
    violations: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations


class FamilyReport(DomainModel):
    rparam: int
    config: BasketConfig
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class ChiDifference(DomainModel):
    value: Fraction
    delta1: Fraction
    delta2: Fraction
    f_values: tuple[int, ...]
    branches: tuple[Literal["+", "-"], ...]
    m: int


# thresholds

class CandidateSetSpec(DomainModel):
    kind: Literal["SmoothCT", "CAcT"]
    k: int
    cap: int

    @model_validator(mode="after")
    def _check_spec(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        # caps below k+1 are allowed and simply cut the r1 range short
        if self.cap < 1:
            raise ValueError("cap must be positive")
        return self


class CtCandidate(DomainModel):
    value: Fraction
    r1: int
    r2: int
    dm: int


class TargetCount(DomainModel):
    target: Fraction
    eps: Fraction
    count: int


class AccumulationReport(DomainModel):
    values: tuple[Fraction, ...]
    counts: tuple[TargetCount, ...]
    minimum: Fraction
    gap: Fraction  # min(values) minus the least target


class ComparisonBounds(DomainModel):
    lo: int
    hi: int

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def contains(self, m_prime: int) -> bool:
        return self.lo <= m_prime <= self.hi


class MonotoneSubsequence(DomainModel):
    pivot: int
    indices: tuple[int, ...]


# verify

class SuiteResult(DomainModel):
    name: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
