import random
from fractions import Fraction

import pytest

from errors import DegenerateInput
from models import CandidateSetSpec
from services import thresholds
from utils.random_instances import generate_ratio_sequences


def test_ik_contains():
    assert thresholds.ik_contains(1, Fraction(3, 7))
    assert not thresholds.ik_contains(1, Fraction(65, 131))
    assert thresholds.ik_contains(1, 64)
    # 130/262 reduces to 65/131
    assert not thresholds.ik_contains(1, Fraction(130, 262))


def test_smallest_smooth_set():
    assert thresholds.enumerate_smooth_ct_set(1, 1) == [Fraction(2, 3), Fraction(1)]


@pytest.mark.parametrize("k", [1, 2])
def test_values_stay_above_one_over_k_plus_one(k):
    floor_value = Fraction(1, k + 1)
    assert all(v > floor_value for v in thresholds.enumerate_smooth_ct_set(k, 40))
    assert all(v > floor_value for v in thresholds.enumerate_cA_ct_set(k, 40))


def test_smooth_minimum_approaches_one_half():
    values = thresholds.enumerate_smooth_ct_set(1, 100)
    assert values == sorted(set(values))
    assert values[0] - Fraction(1, 2) <= Fraction(1, 50)


def test_ca_minimum_approaches_one_third():
    values = thresholds.enumerate_cA_ct_set(2, 100)
    assert values[0] - Fraction(1, 3) <= Fraction(1, 50)


def test_ca_set_contains_the_smooth_set():
    assert set(thresholds.enumerate_smooth_ct_set(2, 30)) <= set(thresholds.enumerate_cA_ct_set(2, 30))


def test_tail_count_is_stable_between_caps():
    tail = Fraction(1, 2) + Fraction(1, 20)
    small = thresholds.enumerate_smooth_ct_set(1, 50)
    large = thresholds.enumerate_smooth_ct_set(1, 100)
    assert sum(1 for v in small if v > tail) == sum(1 for v in large if v > tail)


def test_candidate_records_keep_the_first_triple():
    records = thresholds.ct_candidates(CandidateSetSpec(kind="SmoothCT", k=1, cap=2))
    one = next(r for r in records if r.value == 1)
    assert (one.r1, one.r2, one.dm) == (1, 1, 2)
    for record in records:
        assert Fraction(record.r1 + record.r2, record.dm) == record.value
        assert 2 * record.r2 <= record.dm < 2 * (record.r1 + record.r2)


def test_candidate_spec_validation():
    with pytest.raises(ValueError):
        CandidateSetSpec(kind="SmoothCT", k=0, cap=3)


def test_accumulation_scan_counts_shrink_along_the_ladder():
    values = [Fraction(1, 2) + Fraction(1, j) for j in range(1, 101)]
    report = thresholds.accumulation_scan(values, [Fraction(1, 2)])
    counts = [c.count for c in report.counts]
    assert counts == [99, 49, 19, 9]
    assert report.minimum == Fraction(1, 2) + Fraction(1, 100)


def test_accumulation_scan_of_the_smooth_set():
    report = thresholds.accumulation_scan(thresholds.enumerate_smooth_ct_set(1, 100), [Fraction(1, 2)])
    assert 0 < report.gap <= Fraction(1, 50)


def test_accumulation_scan_of_a_single_value():
    report = thresholds.accumulation_scan([Fraction(3, 4)], [Fraction(1, 2)])
    assert report.values == (Fraction(3, 4),)
    assert report.minimum == Fraction(3, 4)
    assert report.gap == Fraction(1, 4)


def test_accumulation_scan_stops_below_the_next_target():
    report = thresholds.accumulation_scan([Fraction(3, 5), Fraction(9, 10)], [Fraction(1, 2), Fraction(1)], [Fraction(1, 100)])
    assert [(c.target, c.count) for c in report.counts] == [(Fraction(1, 2), 2), (Fraction(1), 0)]


def test_accumulation_scan_needs_values():
    with pytest.raises(DegenerateInput):
        thresholds.accumulation_scan([], [Fraction(1, 2)])


def test_comparison_bounds():
    assert (thresholds.comparison_bounds(1, 7, 1).lo, thresholds.comparison_bounds(1, 7, 1).hi) == (7, 7)
    bounds = thresholds.comparison_bounds(Fraction(1, 2), 5, 2)
    assert (bounds.lo, bounds.hi) == (3, 10)
    assert bounds.contains(3) and not bounds.contains(11)
    assert thresholds.comparison_bounds(0, 4, 1).lo == 0
    assert thresholds.comparison_bounds(2, 3, 1).is_empty


def test_rescaling_and_weight_sum_bound():
    assert thresholds.rescale_threshold(Fraction(2, 3), 4) == Fraction(1, 6)
    assert thresholds.weight_sum_bound(2, 3) == Fraction(5, 6)


def test_single_sequence_keeps_every_index():
    result = thresholds.monotone_ratio_subsequence([[3, 1, 4, 1, 5]])
    assert result.pivot == 0
    assert result.indices == (0, 1, 2, 3, 4)


def test_already_decreasing_ratio_keeps_every_index():
    seqs = [[1, 1, 1, 1], [4, 3, 2, 1]]
    result = thresholds.monotone_ratio_subsequence(seqs)
    assert result.pivot == 0
    assert result.indices == (0, 1, 2, 3)


def test_random_sequences_verify():
    rng = random.Random(11)
    for _ in range(5):
        seqs = generate_ratio_sequences(rng, count=3, length=256)
        result = thresholds.monotone_ratio_subsequence(seqs)
        assert result.indices
        assert thresholds.is_monotone_ratio(seqs, result)


def test_monotone_ratio_needs_data():
    with pytest.raises(DegenerateInput):
        thresholds.monotone_ratio_subsequence([])
