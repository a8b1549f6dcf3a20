import math

import pytest

from qrsums.certificates import (
    admissible_size_range,
    check_cardinality_bound,
    check_product_bound,
    check_subset_residues,
    energy_size_lower_bounds,
    evaluate_certificate,
    feasible_size_pairs,
    generate_residue_instance,
    quadratic_size_ok,
    ratio_size_bounds,
    scan_log_inequality,
    unique_rep_lower_bound,
    verify_log_inequality,
)
from qrsums.errors import HypothesisViolatedError, ParameterRangeError
from qrsums.field import FpSet, residue_set


def test_subset_residues():
    # R_11 = {1, 3, 4, 5, 9}
    assert check_subset_residues(FpSet([0, 1], 11), FpSet([3, 4], 11))
    assert not check_subset_residues(FpSet([0, 1], 11), FpSet([3, 6], 11))
    assert not check_subset_residues(FpSet([0], 11), FpSet([0], 11))  # 0 not a residue


def test_bound_checks_require_hypothesis():
    a, b = FpSet([0, 1], 11), FpSet([3, 6], 11)
    with pytest.raises(HypothesisViolatedError):
        check_cardinality_bound(a, b)
    with pytest.raises(HypothesisViolatedError):
        check_product_bound(a, b)


def test_certificate_on_valid_instance():
    inst = generate_residue_instance(101, (4, 3), seed=9)
    assert inst is not None
    a, b = inst
    assert check_subset_residues(a, b)
    cert = evaluate_certificate(a, b)
    assert cert.all_passed
    names = [e.name for e in cert.checks]
    assert names == ["cardinality-bound", "cardinality-bound-swapped", "product-bound"]
    d = cert.to_dict()
    assert d["p"] == 101 and d["all_passed"] is True
    assert all(set(c) == {"name", "lhs", "rhs", "passed"} for c in d["checks"])


def test_product_bound_arithmetic():
    inst = generate_residue_instance(31, (3, 2), seed=2)
    assert inst is not None
    a, b = inst
    entry = check_product_bound(a, b)
    assert entry.lhs == 31 * len(a) * len(b)
    assert entry.rhs == (31 - len(a)) * (31 - len(b))
    assert entry.passed == (entry.lhs <= entry.rhs)


@pytest.mark.parametrize(
    "p,lower,upper,pmin,pmax,feasible",
    [
        (7, 5, 4, 3, 6, False),
        (43, 5, 12, 21, 42, True),
        (61, 5, 14, 30, 60, True),
        (1009, 9, 62, 504, 1008, True),
    ],
)
def test_admissible_size_range(p, lower, upper, pmin, pmax, feasible):
    sr = admissible_size_range(p)
    assert (sr.lower_A, sr.upper_A) == (lower, upper)
    assert (sr.product_min, sr.product_max) == (pmin, pmax)
    assert sr.feasible is feasible


def test_window_endpoints_versus_sqrt():
    # lower = ceil(sqrt(p)/4 + 1/8) with the 5-floor, upper < 2 sqrt(p) - 1
    for p in (43, 61, 499, 1009):
        sr = admissible_size_range(p)
        assert sr.lower_A >= 5
        assert sr.lower_A >= math.sqrt(p) / 4 + 1 / 8 or sr.lower_A == 5
        assert sr.upper_A < 2 * math.sqrt(p) - 1
        assert sr.upper_A + 1 >= 2 * math.sqrt(p) - 1


def test_feasible_pairs_after_quadratic_constraint():
    sr = admissible_size_range(43)
    pairs = feasible_size_pairs(
        43, (sr.lower_A, sr.upper_A), (sr.lower_A, sr.upper_A),
        sr.product_min, sr.product_max,
    )
    assert pairs == [(5, 5), (5, 6), (6, 5)]

    sr61 = admissible_size_range(61)
    pairs61 = feasible_size_pairs(
        61, (sr61.lower_A, sr61.upper_A), (sr61.lower_A, sr61.upper_A),
        sr61.product_min, sr61.product_max,
    )
    assert sorted({sa for sa, _ in pairs61}) == [5, 6, 7, 8, 9]


def test_quadratic_size_ok_spot_values():
    assert quadratic_size_ok(43, 5, 5)
    assert not quadratic_size_ok(43, 5, 7)
    assert quadratic_size_ok(61, 5, 9)
    assert not quadratic_size_ok(61, 5, 10)


def test_unique_rep_lower_bound_values():
    assert unique_rep_lower_bound(1009) == pytest.approx(44.23, abs=0.005)
    assert unique_rep_lower_bound(37) == pytest.approx(7.18, abs=0.005)
    # closed form sqrt(p)/log(2) - 1.6
    assert unique_rep_lower_bound(101) == pytest.approx(
        math.sqrt(101) / math.log(2) - 1.6
    )


def test_energy_size_lower_bounds():
    e, s = energy_size_lower_bounds(0.0, 101)
    assert e == 2 * (101 - 1)
    assert s == math.sqrt(101) / 2
    e2, s2 = energy_size_lower_bounds(0.25, 101)
    assert e2 == pytest.approx(108.5786, abs=1e-3)
    assert s2 == pytest.approx(3.5532, abs=1e-3)
    for bad in (-0.1, 0.5, 1.0):
        with pytest.raises(ParameterRangeError):
            energy_size_lower_bounds(bad, 101)


def test_ratio_size_bounds():
    lo_a, hi_a, lo_b, hi_b = ratio_size_bounds(1.0, 101)
    assert lo_a == pytest.approx(math.sqrt(50))
    assert hi_a == pytest.approx(10.0)
    assert (lo_a, hi_a) == (lo_b, hi_b)
    res = ratio_size_bounds(0.25, 101)
    assert res[1] == pytest.approx(5.0)
    for bad in (0.125, 0.0, 1.5):
        with pytest.raises(ParameterRangeError):
            ratio_size_bounds(bad, 101)


def test_log_inequality_scan_smoke():
    scan = scan_log_inequality(3000)
    assert scan.holds
    assert scan.smallest_passing_prime == 37
    assert scan.failures == ()
    assert scan.min_margin > 0
    assert verify_log_inequality(10**4)


def test_log_inequality_range_guard():
    with pytest.raises(ValueError):
        scan_log_inequality(30)
    single = scan_log_inequality(37)
    assert single.primes_checked == 1
    assert single.smallest_passing_prime == 37
    assert single.argmin_prime == 37


def test_generate_residue_instance_determinism():
    i1 = generate_residue_instance(101, (4, 3), seed=5)
    i2 = generate_residue_instance(101, (4, 3), seed=5)
    assert i1 == i2
    r = residue_set(101)
    a, b = i1
    for x in a:
        for y in b:
            assert (x + y) % 101 in r


def test_generate_residue_instance_unreachable_sizes():
    # a 5-element A mod 7 cannot keep any B-pool alive
    assert generate_residue_instance(7, (5, 2), seed=1) is None
