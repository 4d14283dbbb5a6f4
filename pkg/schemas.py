import re
from fractions import Fraction
from typing import Annotated, Any, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, StrictInt, StrictStr

from models import GermTag


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def coerce_rational(value: Any) -> Fraction:
    """Integers or "p" / "p/q" strings; floats and zero denominators are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL.match(value)
        if match:
            numerator = int(match.group(1))
            denominator = int(match.group(2)) if match.group(2) is not None else 1
            if denominator == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(numerator, denominator)
    raise ValueError(f"expected an integer or a \"p/q\" string, got {value!r}")


Rational = Annotated[Fraction, BeforeValidator(coerce_rational)]
PositiveInt = Annotated[StrictInt, Field(ge=1)]


class InputFile(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# Polynomials given term by term

class TermEntry(InputFile):
    exp: list[Annotated[StrictInt, Field(ge=0)]]
    coeff: Rational


class TermsEntry(InputFile):
    terms: list[TermEntry]


PolyEntry = Annotated[Union[StrictStr, TermsEntry], Field(union_mode="left_to_right")]


# Cone files

class QuotientEntry(InputFile):
    n: PositiveInt
    chars: list[StrictInt] = Field(min_length=1)


class ConeFile(InputFile):
    """Explicit rays, or the quotient shorthand 1/n(chars) in place of dim and rays."""
    dim: Optional[PositiveInt] = None
    rays: Optional[list[list[StrictInt]]] = None
    quotient: Optional[QuotientEntry] = None
    coeffs: Optional[list[Rational]] = None
    divisor: Optional[list[Rational]] = None


# Germ files

class BoundaryEntry(InputFile):
    coeff: Rational
    poly: PolyEntry


class GermFile(InputFile):
    dim: PositiveInt
    order: PositiveInt = 1
    chars: list[StrictInt]
    eqs: list[PolyEntry] = []
    tag: Optional[GermTag] = None
    boundary: list[BoundaryEntry] = []


# Basket files

class PointEntry(InputFile):
    r: StrictInt
    b: StrictInt
    d: StrictInt
    v: StrictInt


class IntersectionEntry(InputFile):
    e3: Rational = Field(default=Fraction(0), alias="E3")
    e2k: Rational = Field(default=Fraction(0), alias="E2K")
    ec2: Rational = Field(default=Fraction(0), alias="Ec2")


class BasketFile(InputFile):
    n: StrictInt
    a: StrictInt
    b: StrictInt
    points: tuple[PointEntry, PointEntry]
    intersection: Optional[IntersectionEntry] = None


# Newton files

class NewtonFile(InputFile):
    dim: PositiveInt
    vertices: list[list[StrictInt]]


class NewtonGenerators(InputFile):
    vertices: list[list[StrictInt]]


class NewtonSequenceFile(InputFile):
    dim: PositiveInt
    sequence: list[NewtonGenerators] = Field(min_length=1)
