import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence

from models import (
    AlctResult,
    CaratheodoryFold,
    Certificate,
    Check,
    CtBound,
    CtCandidate,
    Infinity,
    MldResult,
    PatternReport,
    Poly,
    SuiteResult,
)


def format_rational(value) -> Optional[str]:
    """Exact rational as "p/q" (or "p"), infinities as "+inf" / "-inf"."""
    if value is None:
        return None
    if isinstance(value, Infinity):
        return str(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_rationals(values: Iterable) -> List[Optional[str]]:
    return [format_rational(v) for v in values]


def format_monomial(alpha: Sequence[int]) -> str:
    factors = []
    for i, power in enumerate(alpha, start=1):
        if power == 1:
            factors.append(f"x{i}")
        elif power > 1:
            factors.append(f"x{i}^{power}")
    return "*".join(factors)


def format_poly(poly: Poly) -> str:
    """Text form accepted back by the polynomial parser; terms in lexicographic order."""
    if poly.is_zero:
        return "0"
    pieces = []
    for alpha in poly.support():
        coeff = poly.terms[alpha]
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        monomial = format_monomial(alpha)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# Payloads

def fold_payload(fold: Optional[CaratheodoryFold]) -> Optional[dict]:
    if fold is None:
        return None
    return {
        "subset": list(fold.subset),
        "lambdas": format_rationals(fold.lambdas),
        "folded_coeffs": format_rationals(fold.folded_coeffs),
        "folded_point": list(fold.folded_point),
        "psi0_folded": format_rational(fold.psi0_folded),
    }


def mld_payload(result: MldResult) -> dict:
    return {
        "mld": format_rational(result.value),
        "witness": list(result.witness) if result.witness is not None else None,
        "psi0_witness": format_rational(result.psi0_witness),
        "fold": fold_payload(result.fold),
    }


def alct_payload(result: AlctResult, a) -> dict:
    return {
        "a": format_rational(a),
        "alct": format_rational(result.value),
        "binding_ray": result.binding_ray,
        "binding_point": list(result.binding_point) if result.binding_point is not None else None,
    }


def checks_payload(checks: Sequence[Check]) -> List[dict]:
    return [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]


def pattern_payload(report: PatternReport) -> dict:
    return {"case": report.case, "passed": report.passed, "checks": checks_payload(report.checks)}


def certificate_payload(certificate: Certificate) -> dict:
    return {
        "status": certificate.status,
        "case": certificate.case,
        "predicted": format_rational(certificate.predicted),
        "leading_terms": [format_poly(p) for p in certificate.leading_terms],
        "reason": certificate.reason,
    }


def ct_bound_payload(bound: CtBound) -> dict:
    return {
        "kind": bound.kind,
        "ct_upper_bound": format_rational(bound.value),
        "weight": list(bound.weight.numerators) if bound.weight is not None else None,
        "denominator": bound.weight.denominator if bound.weight is not None else None,
        "budget": bound.budget,
    }


def verify_payload(results: Sequence[SuiteResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "suites": [
            {"name": r.name, "passed": r.passed, "checks": checks_payload(r.checks)}
            for r in results
        ],
    }


# Rendering

def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _render_lines(value: Any, indent: int, lines: List[str], key: Optional[str] = None) -> None:
    pad = "  " * indent
    label = f"{key}: " if key is not None else "- "
    if isinstance(value, dict):
        lines.append(f"{pad}{label.rstrip()}" if key is not None else f"{pad}-")
        for k in sorted(value):
            _render_lines(value[k], indent + 1, lines, k)
    elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        lines.append(f"{pad}{label.rstrip()}")
        for item in value:
            _render_lines(item, indent + 1, lines)
    elif isinstance(value, list):
        lines.append(f"{pad}{label}[{', '.join(str(v) for v in value)}]")
    else:
        lines.append(f"{pad}{label}{'-' if value is None else value}")


def render_human(payload: Any) -> str:
    """Indented key: value listing of a payload, keys sorted."""
    lines: List[str] = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            _render_lines(payload[key], 0, lines, key)
    else:
        _render_lines(payload, 0, lines)
    return "\n".join(lines) + "\n"


def render_verify_table(results: Sequence[SuiteResult]) -> str:
    """Pass/fail table of the invariant suites."""
    rows = [(r.name, c.name, "PASS" if c.passed else "FAIL", c.detail) for r in results for c in r.checks]
    suite_width = max([len("suite")] + [len(r[0]) for r in rows])
    check_width = max([len("check")] + [len(r[1]) for r in rows])
    lines = [f"{'suite':<{suite_width}}  {'check':<{check_width}}  result  detail"]
    for suite, check, status, detail in rows:
        lines.append(f"{suite:<{suite_width}}  {check:<{check_width}}  {status:<6}  {detail}")
    overall = "PASS" if all(r.passed for r in results) else "FAIL"
    lines.append(f"overall: {overall}")
    return "\n".join(lines) + "\n"


def candidates_csv(records: Sequence[CtCandidate]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["value_num", "value_den", "r1", "r2", "dm"])
    for record in records:
        writer.writerow([record.value.numerator, record.value.denominator, record.r1, record.r2, record.dm])
    return buffer.getvalue()
