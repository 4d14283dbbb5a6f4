import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from errors import ParseError
from models import (
    BasketConfig,
    BoundaryDivisor,
    CyclicAction,
    FictitiousPoint,
    HyperquotientGerm,
    IntersectionData,
    Poly,
    QuotientCone,
    ToricGerm,
    ToricPair,
)
from schemas import (
    BasketFile,
    ConeFile,
    GermFile,
    NewtonFile,
    NewtonSequenceFile,
    TermsEntry,
    coerce_rational,
)
from services.toric import quotient_germ_to_toric


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\^)|(\*)|([+-])|(\S))")


def parse_rational(value: Any, location: str = "") -> Fraction:
    """Integers or "p" / "p/q" strings; floats and zero denominators are rejected."""
    try:
        return coerce_rational(value)
    except ValueError as e:
        raise ParseError(str(e), location)


def parse_weight(text: str) -> Tuple[int, ...]:
    """Weight numerators given as "5,16,3,7" (spaces allowed)."""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if not parts:
        raise ParseError("empty weight", "--weight")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"weight must be a list of integers, got {text!r}", "--weight")


# Polynomials

def parse_poly(text: str, dim: int, location: str = "") -> Poly:
    """
    Parse a sum of terms coef*x1^a1*...*xd^ad.

    Errors point at the 1-based column of the offending character.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {text!r}", location)
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        column = match.end() - len(match.group(0).lstrip()) + 1
        kind = ("number", "var", "pow", "mul", "sign", "bad")[match.lastindex - 1]
        tokens.append((kind, match.group(match.lastindex), column))
        pos = match.end()
    if not tokens:
        raise ParseError("empty polynomial", location)

    terms: Dict[Tuple[int, ...], Fraction] = {}
    index = 0

    def where(i: int) -> str:
        column = tokens[i][2] if i < len(tokens) else len(text) + 1
        return f"{location} column {column}".strip()

    def expect_factor(i: int, coeff: Fraction, alpha: List[int]) -> Tuple[int, Fraction]:
        if i >= len(tokens):
            raise ParseError("expected a number or a variable", where(i))
        kind, raw, _ = tokens[i]
        if kind == "number":
            return i + 1, coeff * parse_rational(raw, where(i))
        if kind == "var":
            var = int(raw)
            if not 1 <= var <= dim:
                raise ParseError(f"variable x{var} outside x1..x{dim}", where(i))
            power = 1
            if i + 1 < len(tokens) and tokens[i + 1][0] == "pow":
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "number" or "/" in tokens[i + 2][1]:
                    raise ParseError("expected an integer exponent", where(i + 2))
                power = int(tokens[i + 2][1])
                i += 2
            alpha[var - 1] += power
            return i + 1, coeff
        raise ParseError(f"unexpected {raw!r}", where(i))

    while index < len(tokens):
        sign = Fraction(1)
        if tokens[index][0] == "sign":
            sign = Fraction(-1) if tokens[index][1] == "-" else Fraction(1)
            index += 1
        elif index > 0:
            raise ParseError(f"expected '+' or '-', got {tokens[index][1]!r}", where(index))
        coeff, alpha = sign, [0] * dim
        index, coeff = expect_factor(index, coeff, alpha)
        while index < len(tokens) and tokens[index][0] == "mul":
            index, coeff = expect_factor(index + 1, coeff, alpha)
        if index < len(tokens) and tokens[index][0] != "sign":
            raise ParseError(f"unexpected {tokens[index][1]!r}", where(index))
        key = tuple(alpha)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return _build(Poly, location, dim=dim, terms=terms)


def parse_poly_value(value: Any, dim: int, location: str = "") -> Poly:
    """A polynomial given as text or as {"terms": [{"exp": [...], "coeff": "p/q"}]}."""
    if isinstance(value, str):
        return parse_poly(value, dim, location)
    if isinstance(value, TermsEntry):
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for i, term in enumerate(value.terms):
            alpha = tuple(term.exp)
            if len(alpha) != dim:
                raise ParseError(f"exponent of length {len(alpha)}, expected {dim}", f"{location}.terms[{i}].exp")
            terms[alpha] = terms.get(alpha, Fraction(0)) + term.coeff
        return _build(Poly, location, dim=dim, terms=terms)
    raise ParseError(f"expected a polynomial, got {value!r}", location)


# Model construction

def _location(loc: Sequence, prefix: str = "") -> str:
    text = prefix
    for part in loc:
        if part == "__root__":
            continue
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else str(part)
    return text


def _raise_parse_error(error: ValidationError, location: str = ""):
    first = error.errors()[0]
    raise ParseError(first.get("msg", str(error)), _location(first.get("loc", ()), location))


def _build(model, location: str, **fields):
    try:
        return model(**fields)
    except ValidationError as e:
        _raise_parse_error(e, location)


def _validate(schema, data: Any):
    try:
        return schema.model_validate(data)
    except ValidationError as e:
        _raise_parse_error(e)


def _rationals(values: Optional[List[Fraction]], size: int, location: str) -> Optional[Tuple[Fraction, ...]]:
    if values is None:
        return None
    if len(values) != size:
        raise ParseError(f"expected {size} entries, got {len(values)}", location)
    return tuple(values)


def load_json(path) -> Any:
    path = Path(path)
    try:
        with path.open() as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ParseError("file not found", str(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", f"{path} line {e.lineno} column {e.colno}")


# File formats

def parse_cone(data: Any) -> Tuple[ToricPair, Optional[Tuple[Fraction, ...]], Optional[QuotientCone]]:
    """Cone file: explicit rays or the quotient shorthand, optional coeffs and divisor."""
    cone = _validate(ConeFile, data)
    quotient = None
    if cone.quotient is not None:
        for key in ("dim", "rays"):
            if getattr(cone, key) is not None:
                raise ParseError("not allowed together with the quotient shorthand", key)
        quotient = quotient_germ_to_toric(cone.quotient.n, tuple(cone.quotient.chars))
        germ = quotient.germ
    else:
        for key in ("dim", "rays"):
            if getattr(cone, key) is None:
                raise ParseError(f"missing key {key!r}", key)
        germ = _build(ToricGerm, "", dim=cone.dim, rays=tuple(tuple(ray) for ray in cone.rays))

    size = len(germ.rays)
    coeffs = _rationals(cone.coeffs, size, "coeffs") or (Fraction(0),) * size
    divisor = _rationals(cone.divisor, size, "divisor")
    pair = _build(ToricPair, "", germ=germ, coeffs=coeffs)
    return pair, divisor, quotient


def parse_germ(data: Any) -> Tuple[HyperquotientGerm, List[BoundaryDivisor]]:
    germ_file = _validate(GermFile, data)
    dim = germ_file.dim
    if len(germ_file.chars) != dim:
        raise ParseError(f"expected {dim} characters, got {len(germ_file.chars)}", "chars")
    eqs = tuple(parse_poly_value(eq, dim, f"eqs[{i}]") for i, eq in enumerate(germ_file.eqs))
    boundary = []
    for i, item in enumerate(germ_file.boundary):
        where = f"boundary[{i}]"
        defining = parse_poly_value(item.poly, dim, f"{where}.poly")
        boundary.append(_build(BoundaryDivisor, where, coeff=item.coeff, defining=defining))

    action = _build(CyclicAction, "chars", n=germ_file.order, chars=tuple(germ_file.chars))
    germ = _build(HyperquotientGerm, "", dim=dim, action=action, eqs=eqs, tag=germ_file.tag)
    return germ, boundary


def parse_basket(data: Any) -> Tuple[BasketConfig, Optional[IntersectionData]]:
    basket = _validate(BasketFile, data)
    points = tuple(
        _build(FictitiousPoint, f"points[{i}]", r=p.r, b=p.b, d_class=p.d, v=p.v)
        for i, p in enumerate(basket.points)
    )
    config = _build(BasketConfig, "", n=basket.n, a=basket.a, b_amb=basket.b, points=points)
    intersection = None
    if basket.intersection is not None:
        raw = basket.intersection
        intersection = IntersectionData(e3=raw.e3, e2k=raw.e2k, ec2=raw.ec2)
    return config, intersection


def _vertices(rows: List[List[int]], dim: int, location: str) -> List[Tuple[int, ...]]:
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise ParseError(f"vertex of length {len(row)}, expected {dim}", f"{location}[{i}]")
    return [tuple(row) for row in rows]


def parse_newton(data: Any) -> Tuple[int, List[Tuple[int, ...]]]:
    """Newton file for `reduce`: dimension and raw generator list."""
    newton_file = _validate(NewtonFile, data)
    return newton_file.dim, _vertices(newton_file.vertices, newton_file.dim, "vertices")


def parse_newton_sequence(data: Any) -> Tuple[int, List[List[Tuple[int, ...]]]]:
    """Newton file for `chain`: dimension and one generator list per polytope."""
    sequence_file = _validate(NewtonSequenceFile, data)
    dim = sequence_file.dim
    return dim, [
        _vertices(item.vertices, dim, f"sequence[{i}].vertices")
        for i, item in enumerate(sequence_file.sequence)
    ]


PARSERS = {
    "cone": parse_cone,
    "germ": parse_germ,
    "basket": parse_basket,
    "newton": parse_newton,
    "newton-sequence": parse_newton_sequence,
}


def parse_inputs(path, kind: str):
    """Load a JSON file and parse it as one of the known input kinds."""
    if kind not in PARSERS:
        raise ValueError(f"unknown input kind {kind!r}")
    return PARSERS[kind](load_json(path))
