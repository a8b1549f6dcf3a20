import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrsums.errors import EmptySetError, ModulusMismatchError
from qrsums.field import FpSet
from qrsums.sumsets import (
    build_profile,
    check_doubling_bound,
    check_energy_bound,
    check_holder,
    check_moment_bound,
    energy_brute_force,
    moment,
    profile_dict,
    random_subset_pair,
)


@pytest.fixture
def small_profile():
    return build_profile(FpSet([1, 3, 4], 23), FpSet([0, 2], 23))


def test_profile_moments(small_profile):
    pr = small_profile
    assert pr.m0 == len(pr.support) == 5
    assert pr.m1 == 6 == sum(pr.rep_counts)
    assert pr.energy == 8
    assert pr.unique_count == 4
    assert moment(pr, 0) == 5
    assert moment(pr, 1) == 6
    assert moment(pr, 2) == 8
    # fractional theta through fsum
    assert moment(pr, 0.5) == pytest.approx(4 + math.sqrt(2))


def test_profile_support_wraps():
    pr = build_profile(FpSet([6], 7), FpSet([3, 5], 7))
    assert set(pr.support.elements) == {2, 4}


def test_profile_errors():
    with pytest.raises(EmptySetError):
        build_profile(FpSet([], 7), FpSet([1], 7))
    with pytest.raises(ModulusMismatchError):
        build_profile(FpSet([1], 7), FpSet([1], 11))


def test_profile_dict_schema(small_profile):
    d = profile_dict(small_profile)
    assert d["p"] == 23
    assert d["A"] == [1, 3, 4] and d["B"] == [0, 2]
    assert d["M0"] == 5 and d["M1"] == 6 and d["E"] == 8
    assert d["unique"] == 4
    assert len(d["support"]) == 5 == len(d["r_nonzero"])
    assert sum(r for _, r in d["r_nonzero"]) == d["M1"]


def test_singleton_side_makes_all_reps_unique():
    pr = build_profile(FpSet([4], 11), FpSet([0, 1, 5, 9], 11))
    assert pr.unique_count == pr.m0 == pr.m1 == 4
    assert pr.energy == 4


@settings(max_examples=60, deadline=None)
@given(
    p=st.sampled_from([11, 13, 17]),
    data=st.data(),
)
def test_energy_matches_quadruple_count(p, data):
    a = data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=8))
    b = data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=8))
    sa, sb = FpSet(a, p), FpSet(b, p)
    assert build_profile(sa, sb).energy == energy_brute_force(sa, sb)


@settings(max_examples=60, deadline=None)
@given(
    p=st.sampled_from([11, 31]),
    data=st.data(),
)
def test_inequality_chain_and_checks(p, data):
    a = data.draw(st.sets(st.integers(0, p - 1), min_size=2, max_size=p - 1))
    b = data.draw(st.sets(st.integers(0, p - 1), min_size=2, max_size=p - 1))
    pr = build_profile(FpSet(a, p), FpSet(b, p))
    assert 0 <= pr.unique_count <= pr.m0 <= pr.m1 <= pr.energy
    for theta in (0.5, 1.0, 2.0):
        assert check_holder(pr, theta)
        assert check_moment_bound(pr, theta)
    assert check_energy_bound(pr)
    assert check_doubling_bound(pr)


def test_checks_on_structured_extremes():
    # arithmetic progressions maximize collisions; full residue lines too
    ap = FpSet(range(0, 20, 2), 31)
    pr = build_profile(ap, ap)
    for theta in (0.5, 1.0, 2.0):
        assert check_holder(pr, theta)
        assert check_moment_bound(pr, theta)
    assert check_energy_bound(pr)
    assert check_doubling_bound(pr)

    whole = FpSet(range(11), 11)
    pr2 = build_profile(whole, whole)
    assert pr2.m0 == 11 and pr2.m1 == 121
    assert pr2.energy == energy_brute_force(whole, whole)
    assert check_energy_bound(pr2)


def test_random_subset_pair_is_rng_driven():
    rng = np.random.default_rng(42)
    a1, b1 = random_subset_pair(101, rng)
    rng2 = np.random.default_rng(42)
    a2, b2 = random_subset_pair(101, rng2)
    assert a1 == a2 and b1 == b2
    assert 2 <= len(a1) <= 40 and 2 <= len(b1) <= 40
