import random

import pytest

from services import verify


def _all_pass(checks):
    failed = [f"{c.name}: {c.detail}" for c in checks if not c.passed]
    assert not failed, failed


def test_lattice_suite():
    _all_pass(verify.suite_lattice(random.Random(1), samples=20))


def test_newton_suite():
    _all_pass(verify.suite_newton(random.Random(2), samples=50))


def test_weights_suite():
    _all_pass(verify.suite_weights(random.Random(3), samples=50))


def test_germs_suite():
    _all_pass(verify.suite_germs(random.Random(4), samples=10, budget=12))


def test_toric_suite():
    _all_pass(verify.suite_toric(random.Random(5), samples=15, alct_samples=8))


def test_reid_suite():
    _all_pass(verify.suite_reid(random.Random(6), samples=300))


def test_thresholds_suite():
    _all_pass(verify.suite_thresholds(random.Random(7), samples=3))


def test_run_suites_is_reproducible():
    first = verify.run_suites(["weights"], seed=99)
    second = verify.run_suites(["weights"], seed=99)
    assert first == second
    assert first[0].passed


def test_run_suites_rejects_unknown_names():
    with pytest.raises(ValueError):
        verify.run_suites(["nope"])
