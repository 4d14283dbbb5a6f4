import logging
from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, Optional, Sequence

from errors import DegenerateInput
from models import (
    AccumulationReport,
    CandidateSetSpec,
    ComparisonBounds,
    CtCandidate,
    MonotoneSubsequence,
    TargetCount,
    to_fraction,
)
from utils.parallel import partitioned_map

logger = logging.getLogger(__name__)


DEFAULT_EPS_LADDER = (Fraction(1, 100), Fraction(1, 50), Fraction(1, 20), Fraction(1, 10))


def ik_contains(k: int, t) -> bool:
    """t lies in I_k: its reduced numerator is at most 16(k+1)^2."""
    t = to_fraction(t)
    if k < 1:
        raise ValueError("k must be positive")
    if t <= 0:
        raise ValueError("t must be positive")
    return t.numerator <= 16 * (k + 1) ** 2


def _candidates_for_r1(k: int, cap: int, r1: int) -> List[CtCandidate]:
    found = []
    for r2 in range(r1, cap + 1):
        for dm in range((k + 1) * r2, (k + 1) * (r1 + r2)):
            found.append(CtCandidate(value=Fraction(r1 + r2, dm), r1=r1, r2=r2, dm=dm))
    return found


def ct_candidates(scan: CandidateSetSpec) -> List[CtCandidate]:
    """
    One record per distinct value (r1 + r2) / dm, ascending.

    The range is 1 <= r1 <= k+1, r1 <= r2 <= cap and (k+1) r2 <= dm < (k+1)(r1 + r2);
    each value keeps the first (r1, r2, dm) producing it.
    """
    k, cap = scan.k, scan.cap
    first: Dict[Fraction, CtCandidate] = {}
    chunks = partitioned_map(lambda r1: _candidates_for_r1(k, cap, r1), range(1, min(k + 1, cap) + 1), min_partitions=2)
    for chunk in chunks:
        for candidate in chunk:
            first.setdefault(candidate.value, candidate)
    records = [first[v] for v in sorted(first)]
    logger.info(f"{scan.kind} scan k={k} cap={cap}: {len(records)} values")
    return records


def enumerate_smooth_ct_set(k: int, cap: int) -> List[Fraction]:
    """Candidate canonical thresholds (r1 + r2)/m at smooth points, ascending."""
    return [c.value for c in ct_candidates(CandidateSetSpec(kind="SmoothCT", k=k, cap=cap))]


def enumerate_cA_ct_set(k: int, cap: int) -> List[Fraction]:
    """Candidate canonical thresholds (r1 + r2)/(d m) at cA points; the product dm is enumerated directly."""
    return [c.value for c in ct_candidates(CandidateSetSpec(kind="CAcT", k=k, cap=cap))]


def accumulation_scan(values: Sequence, targets: Sequence, eps_ladder: Sequence = DEFAULT_EPS_LADDER) -> AccumulationReport:
    """
    Finite diagnostics around expected accumulation points.

    For each target and eps, counts the values in (target + eps, next target).
    The gap is min(values) minus the least target.
    """
    cleaned = sorted({to_fraction(v) for v in values})
    if not cleaned:
        raise DegenerateInput("accumulation_scan needs at least one value")
    ordered_targets = sorted({to_fraction(t) for t in targets})
    if not ordered_targets:
        raise DegenerateInput("accumulation_scan needs at least one target")

    counts = []
    for index, target in enumerate(ordered_targets):
        upper: Optional[Fraction] = ordered_targets[index + 1] if index + 1 < len(ordered_targets) else None
        for eps in eps_ladder:
            eps = to_fraction(eps)
            count = sum(1 for v in cleaned if v > target + eps and (upper is None or v < upper))
            counts.append(TargetCount(target=target, eps=eps, count=count))

    minimum = cleaned[0]
    return AccumulationReport(
        values=tuple(cleaned),
        counts=tuple(counts),
        minimum=minimum,
        gap=minimum - ordered_targets[0],
    )


def comparison_bounds(mu, m: int, ratio) -> ComparisonBounds:
    """The window ceil(mu m) <= m' <= floor(ratio m) for the multiplicity under a second weight."""
    mu, ratio = to_fraction(mu), to_fraction(ratio)
    if mu < 0:
        raise ValueError("mu must be non-negative")
    if m < 1:
        raise ValueError("m must be positive")
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    return ComparisonBounds(lo=ceil(mu * m), hi=floor(ratio * m))


def rescale_threshold(t, k: int) -> Fraction:
    """ct(X, 0; kD) = ct(X, 0; D) / k."""
    if k < 1:
        raise ValueError("k must be positive")
    return to_fraction(t) / k


def weight_sum_bound(r1: int, r2: int) -> Fraction:
    """1/r1 + 1/r2, the bound that limits r1 to at most k+1 in the scans."""
    if r1 < 1 or r2 < 1:
        raise ValueError("r1 and r2 must be positive")
    return Fraction(1, r1) + Fraction(1, r2)


def _longest_non_increasing(values: Sequence[Fraction]) -> List[int]:
    """Positions of the lexicographically least longest non-increasing subsequence."""
    size = len(values)
    length = [1] * size
    for i in range(size - 1, -1, -1):
        for j in range(i + 1, size):
            if values[j] <= values[i] and length[j] + 1 > length[i]:
                length[i] = length[j] + 1
    best = max(length)
    chosen = []
    need = best
    last = None
    for i in range(size):
        if length[i] == need and (last is None or values[i] <= values[last]):
            chosen.append(i)
            last = i
            need -= 1
            if need == 0:
                break
    return chosen


def monotone_ratio_subsequence(seqs: Sequence[Sequence]) -> MonotoneSubsequence:
    """
    Pivot k and positions along which every ratio a_j / a_k is non-increasing.

    For each pivot the other ratio sequences are processed in order, each time
    keeping the longest non-increasing subsequence of the surviving positions.
    The longest result wins, ties going to the least pivot (0-based).
    """
    if not seqs or not seqs[0]:
        raise DegenerateInput("monotone_ratio_subsequence needs nonempty sequences")
    rows = [[to_fraction(x) for x in seq] for seq in seqs]
    size = len(rows[0])
    if any(len(row) != size for row in rows):
        raise ValueError("sequences must have equal length")
    if any(x <= 0 for row in rows for x in row):
        raise ValueError("entries must be positive")

    best: Optional[MonotoneSubsequence] = None
    for pivot in range(len(rows)):
        positions = list(range(size))
        for j in range(len(rows)):
            if j == pivot:
                continue
            ratios = [rows[j][p] / rows[pivot][p] for p in positions]
            positions = [positions[i] for i in _longest_non_increasing(ratios)]
        if best is None or len(positions) > len(best.indices):
            best = MonotoneSubsequence(pivot=pivot, indices=tuple(positions))
    logger.debug(f"Monotone ratio subsequence of length {len(best.indices)} with pivot {best.pivot}")
    return best


def is_monotone_ratio(seqs: Sequence[Sequence], result: MonotoneSubsequence) -> bool:
    """Post-hoc check that every ratio sequence is non-increasing along the indices."""
    rows = [[to_fraction(x) for x in seq] for seq in seqs]
    pivot = rows[result.pivot]
    for row in rows:
        ratios = [row[p] / pivot[p] for p in result.indices]
        if any(b > a for a, b in zip(ratios, ratios[1:])):
            return False
    return True
