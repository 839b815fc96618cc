"""Integer factorization and valuations."""

from fractions import Fraction as F

import pytest

from flatcert import prime_factors
from flatcert.exact.integers import euler_phi, is_prime, padic_valuation


def test_prime_factors_examples():
    assert prime_factors(12) == [(2, 2), (3, 1)]
    assert prime_factors(1) == []
    # 1000003: prime by deterministic Miller-Rabin in the 64-bit range
    assert prime_factors(1000003) == [(1000003, 1)]


def test_prime_factors_large_composite():
    n = 1000003 * 999983 * 2**5
    fs = prime_factors(n)
    assert fs == [(2, 5), (999983, 1), (1000003, 1)]
    rebuilt = 1
    for p, e in fs:
        assert is_prime(p)
        rebuilt *= p**e
    assert rebuilt == n


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23}
    for n in range(2, 25):
        assert is_prime(n) == (n in primes)


def test_padic_valuation():
    assert padic_valuation(F(12), 2) == 2
    assert padic_valuation(F(1, 8), 2) == -3
    assert padic_valuation(F(9, 2), 3) == 2
    with pytest.raises(ValueError):
        padic_valuation(F(0), 5)


def test_euler_phi():
    assert [euler_phi(k) for k in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
