import pytest
from hypothesis import given
from hypothesis import strategies as st

from qrsums.errors import CompositeInputError, EvenModulusError
from qrsums.field import (
    FpSet,
    Prime,
    as_prime,
    is_prime,
    legendre,
    legendre_table,
    mask_to_elements,
    primes_in_range,
    residue_set,
    rotate_mask,
)


@pytest.mark.parametrize("n", [3, 5, 7, 11, 13, 97, 101, 499, 1009, 999983])
def test_is_prime_accepts_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [0, 1, 4, 9, 15, 91, 100, 561, 1001])
def test_is_prime_rejects_composites(n):
    assert not is_prime(n)


def test_prime_wrapper_validation():
    assert int(Prime(13)) == 13
    with pytest.raises(EvenModulusError):
        Prime(2)
    with pytest.raises(CompositeInputError):
        Prime(9)
    assert as_prime(Prime(7)) == Prime(7)


def test_primes_in_range_matches_trial_division():
    got = primes_in_range(2, 200)
    assert got == [n for n in range(2, 201) if is_prime(n)]
    assert primes_in_range(90, 96) == []


@pytest.mark.parametrize("p", [3, 5, 7, 13, 101])
def test_legendre_table_matches_scalar(p):
    table = legendre_table(p)
    assert table[0] == 0
    for a in range(p):
        assert table[a] == legendre(a, p)
    # exactly half the nonzero classes are squares
    assert int((table == 1).sum()) == (p - 1) // 2


def test_legendre_euler_criterion_spot():
    # 2 is a square mod 7 (3*3 = 2), not mod 5
    assert legendre(2, 7) == 1
    assert legendre(2, 5) == -1
    assert legendre(10, 5) == 0


@pytest.mark.parametrize(
    "p,expected",
    [(7, {1, 2, 4}), (11, {1, 3, 4, 5, 9}), (23, {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18})],
)
def test_residue_set_values(p, expected):
    r = residue_set(p)
    assert set(r.elements) == expected
    assert len(r) == (p - 1) // 2
    assert 0 not in r


def test_fpset_roundtrip_and_protocol():
    s = FpSet([4, 1, 8, 1], 11)
    assert s.elements == (1, 4, 8)
    assert len(s) == 3
    assert list(s) == [1, 4, 8]
    assert 4 in s and 5 not in s
    assert FpSet.from_mask(s.mask, 11) == s
    assert hash(FpSet([1, 4, 8], 11)) == hash(s)
    assert s != FpSet([1, 4, 8], 13)


def test_fpset_translate_wraps():
    s = FpSet([9, 10], 11)
    assert s.translate(3).elements == (1, 2)


def test_mask_to_elements_is_sorted_inverse():
    mask = FpSet([0, 2, 9], 13).mask
    assert mask_to_elements(mask) == [0, 2, 9]


@given(
    p=st.sampled_from([5, 7, 11, 13, 17]),
    data=st.data(),
)
def test_rotate_mask_agrees_with_translate(p, data):
    elems = data.draw(st.sets(st.integers(0, p - 1), max_size=p))
    shift = data.draw(st.integers(0, p - 1))
    s = FpSet(elems, p)
    assert rotate_mask(s.mask, shift, p) == s.translate(shift).mask
