import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permtri.lucas import DigitVector, binom_mod_p, digits, nonzero_count, trinomial_admissible


def test_examples():
    assert binom_mod_p(10, 3, 2) == 0
    assert binom_mod_p(10, 2, 2) == 1
    assert binom_mod_p(7, 3, 3) == 2  # 35 = 2 mod 3
    assert binom_mod_p(5, 7, 5) == 0
    assert binom_mod_p(0, 0, 7) == 1


def test_bad_arguments():
    with pytest.raises(ValueError):
        binom_mod_p(5, 2, 4)
    with pytest.raises(ValueError):
        binom_mod_p(5, 2, 1)
    with pytest.raises(ValueError):
        binom_mod_p(-1, 0, 2)
    with pytest.raises(ValueError):
        digits(-3, 2)


def test_digits():
    assert digits(0, 3).digits == ()
    assert digits(10, 2).digits == (0, 1, 0, 1)
    assert digits(100, 7).value == 100
    with pytest.raises(ValueError):
        DigitVector(2, (1, 0))
    with pytest.raises(ValueError):
        DigitVector(3, (3,))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_against_pascal_rows(p):
    row = [1]
    for n in range(200):
        for k in range(n + 1):
            assert binom_mod_p(n, k, p) == row[k] % p, (n, k, p)
        row = [1] + [row[i] + row[i + 1] for i in range(n)] + [1]


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 5000), st.integers(0, 5000), st.sampled_from([2, 3, 5, 7, 13, 101]))
def test_against_math_comb(n, k, p):
    assert binom_mod_p(n, k, p) == math.comb(n, k) % p


@pytest.mark.parametrize("p", [2, 3, 5])
def test_nonzero_count(p):
    for n in range(300):
        assert nonzero_count(n, p) == sum(1 for k in range(n + 1) if math.comb(n, k) % p)


def test_two_bits_means_four_odd_binomials():
    for n in range(1, 2000):
        if nonzero_count(n, 2) <= 4:
            assert n.bit_count() <= 2


def test_trinomial_admissible():
    assert trinomial_admissible(5) == (0, 2)
    assert trinomial_admissible(12) == (2, 3)
    assert trinomial_admissible(8) is None
    assert trinomial_admissible(7) is None
    assert trinomial_admissible(0) is None
    for n in range(1, 1 << 10):
        st_ = trinomial_admissible(n)
        assert (st_ is not None) == (nonzero_count(n, 2) == 4)
        if st_:
            assert (1 << st_[0]) + (1 << st_[1]) == n
