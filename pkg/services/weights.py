import logging
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Dict, Iterable, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import ring as poly_ring

from errors import ZeroPolynomial
from models import ExtRat, IntVector, PLUS_INFINITY, Poly, Weight, WeightComparison, to_fraction

logger = logging.getLogger(__name__)


# Polynomial arithmetic, carried out in sympy's sparse ring QQ[x1..xd]

@lru_cache(maxsize=None)
def _ring(dim: int):
    R, *_ = poly_ring([f"x{i + 1}" for i in range(dim)], QQ)
    return R


def _to_ring(p: Poly):
    R = _ring(p.dim)
    return R.from_dict({alpha: QQ(c.numerator, c.denominator) for alpha, c in p.terms.items()})


def _from_ring(dim: int, element) -> Poly:
    return Poly(dim=dim, terms={
        alpha: Fraction(int(QQ.numer(c)), int(QQ.denom(c))) for alpha, c in element.items()
    })


def make_poly(dim: int, terms: Optional[Dict[IntVector, Fraction]] = None) -> Poly:
    return Poly(dim=dim, terms=terms or {})


def zero_poly(dim: int) -> Poly:
    return Poly(dim=dim, terms={})


def monomial(alpha: Sequence[int], coeff=1) -> Poly:
    return Poly(dim=len(alpha), terms={tuple(alpha): to_fraction(coeff)})


def poly_from_terms(dim: int, terms: Iterable[tuple[Sequence[int], object]]) -> Poly:
    """Build a polynomial from (exponent, coefficient) pairs, summing repeats."""
    collected: Dict[IntVector, Fraction] = {}
    for alpha, coeff in terms:
        key = tuple(int(a) for a in alpha)
        collected[key] = collected.get(key, Fraction(0)) + to_fraction(coeff)
    return Poly(dim=dim, terms=collected)


def poly_add(p: Poly, q: Poly) -> Poly:
    _check_same_dim(p, q)
    return _from_ring(p.dim, _to_ring(p) + _to_ring(q))


def poly_scale(p: Poly, factor) -> Poly:
    factor = to_fraction(factor)
    return _from_ring(p.dim, _to_ring(p) * QQ(factor.numerator, factor.denominator))


def poly_mul(p: Poly, q: Poly) -> Poly:
    _check_same_dim(p, q)
    return _from_ring(p.dim, _to_ring(p) * _to_ring(q))


def _check_same_dim(p: Poly, q: Poly) -> None:
    if p.dim != q.dim:
        raise ValueError(f"polynomials live in different dimensions ({p.dim} and {q.dim})")


def _check_weight_dim(w: Weight, dim: int) -> None:
    if w.dim != dim:
        raise ValueError(f"weight of length {w.dim} applied in dimension {dim}")


# Weights

def weight_of_monomial(w: Weight, alpha: Sequence[int]) -> Fraction:
    """w(x^alpha) = sum of w_i * alpha_i."""
    _check_weight_dim(w, len(alpha))
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in {tuple(alpha)}")
    return sum((wi * a for wi, a in zip(w.entries, alpha)), Fraction(0))


def weight_of_poly(w: Weight, h: Poly) -> ExtRat:
    """Minimum weight over the support of h; +inf for the zero polynomial."""
    _check_weight_dim(w, h.dim)
    if h.is_zero:
        return PLUS_INFINITY
    return min(weight_of_monomial(w, alpha) for alpha in h.terms)


def leading_term(w: Weight, h: Poly) -> Poly:
    """Sum of the terms of h of minimal w-weight."""
    if h.is_zero:
        raise ZeroPolynomial("the zero polynomial has no leading term")
    lowest = weight_of_poly(w, h)
    return Poly(
        dim=h.dim,
        terms={alpha: c for alpha, c in h.terms.items() if weight_of_monomial(w, alpha) == lowest},
    )


def is_w_homogeneous(w: Weight, h: Poly) -> bool:
    if h.is_zero:
        return True
    return leading_term(w, h).terms == h.terms


def truncate(h: Poly, c: int) -> Poly:
    """The c-th truncation: terms of total degree at most c."""
    if c < 0:
        raise ValueError("truncation degree must be non-negative")
    return Poly(dim=h.dim, terms={alpha: v for alpha, v in h.terms.items() if sum(alpha) <= c})


def truncation_degree(w: Weight, target) -> int:
    """
    Total degree that captures every term of weight <= target.

    A monomial of total degree above ceil(target / min w_i) weighs more than
    target, so truncating a series there loses nothing for weights up to target.
    """
    target = to_fraction(target)
    return max(0, ceil(target / min(w.entries)))


def weighted_truncate(h: Poly, w: Weight, target) -> Poly:
    """Terms of h of weight at most target."""
    target = to_fraction(target)
    return Poly(
        dim=h.dim,
        terms={alpha: v for alpha, v in h.terms.items() if weight_of_monomial(w, alpha) <= target},
    )


def scale_weight(w: Weight, mu) -> Weight:
    mu = to_fraction(mu)
    return Weight(entries=tuple(mu * e for e in w.entries))


def compare_weights(w: Weight, w2: Weight) -> WeightComparison:
    """
    Compare two weights of the same length.

    geq holds when w_i >= w2_i for every i. scalar is mu when w = mu * w2;
    both can hold at once.
    """
    if w.dim != w2.dim:
        raise ValueError(f"cannot compare weights of lengths {w.dim} and {w2.dim}")
    geq = all(a >= b for a, b in zip(w.entries, w2.entries))
    mu = w.entries[0] / w2.entries[0]
    scalar = mu if all(a == mu * b for a, b in zip(w.entries, w2.entries)) else None
    return WeightComparison(geq=geq, scalar=scalar)


def dominates_scaled(w: Weight, w2: Weight, mu) -> bool:
    """True when w >= mu * w2 entrywise."""
    mu = to_fraction(mu)
    return all(a >= mu * b for a, b in zip(w.entries, w2.entries))
