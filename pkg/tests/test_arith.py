import math
import random
from fractions import Fraction

import pytest

from rweis.arith import (
    Phase,
    bernoulli,
    dedekind_sum,
    dedekind_sum_naive,
    divisors,
    e_of,
    kronecker,
    sawtooth,
    sigma,
)

from helpers import dedekind_literal


def test_sawtooth_values():
    assert sawtooth(Fraction(1, 2)) == 0
    assert sawtooth(3) == 0
    assert sawtooth(Fraction(1, 5)) == Fraction(-3, 10)
    assert sawtooth(Fraction(-1, 5)) == Fraction(3, 10)
    assert sawtooth(Fraction(7, 5)) == sawtooth(Fraction(2, 5))


def test_dedekind_naive_values():
    # s(1,p) = (p-1)(p-2)/(12p)
    assert dedekind_sum_naive(1, 5) == Fraction(1, 5)
    assert dedekind_sum_naive(0, 1) == 0
    # independent oracle: the literal sawtooth sum
    assert dedekind_literal(2, 5) == 0
    assert dedekind_sum_naive(2, 5) == 0


def test_dedekind_naive_matches_literal_definition():
    for k in range(1, 40):
        for h in range(k):
            assert dedekind_sum_naive(h, k) == dedekind_literal(h, k), (h, k)


def test_dedekind_fast_values():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(7, 1) == 0
    assert dedekind_sum(-5, 12) == -dedekind_sum_naive(5, 12)


def test_dedekind_fast_matches_naive():
    for k in range(1, 120):
        for h in range(k):
            assert dedekind_sum(h, k) == dedekind_sum_naive(h, k), (h, k)


def test_dedekind_reciprocity():
    rng = random.Random(7)
    for _ in range(300):
        h = rng.randint(1, 10**6)
        k = rng.randint(1, 10**6)
        if math.gcd(h, k) != 1:
            continue
        lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
        rhs = Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)
        assert lhs == rhs, (h, k)


def test_dedekind_periodicity_oddness():
    rng = random.Random(11)
    for _ in range(200):
        k = rng.randint(1, 5000)
        h = rng.randint(-5000, 5000)
        assert dedekind_sum(h + k, k) == dedekind_sum(h, k)
        assert dedekind_sum(-h, k) == -dedekind_sum(h, k)


def test_dedekind_k1_rejects_bad_k():
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)
    with pytest.raises(ValueError):
        dedekind_sum_naive(1, -2)


def test_kronecker_values():
    assert kronecker(2, 3) == -1
    for a in (-7, -1, 0, 1, 5, 12):
        assert kronecker(a, 1) == 1
    assert kronecker(3, 5) == -1
    assert kronecker(0, 0) == 0
    assert kronecker(1, 0) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(4, 2) == 0
    assert kronecker(-1, -1) == -1


def test_kronecker_euler_criterion():
    # (a|p) == a^((p-1)/2) mod p for odd primes
    for p in (3, 5, 7, 11, 13, 29, 97):
        for a in range(-2 * p, 2 * p):
            want = pow(a % p, (p - 1) // 2, p)
            want = {0: 0, 1: 1, p - 1: -1}[want]
            assert kronecker(a, p) == want, (a, p)


def test_kronecker_multiplicative():
    rng = random.Random(5)
    for _ in range(500):
        a = rng.randint(-200, 200)
        b = rng.randint(-200, 200)
        n = rng.randint(-200, 200)
        m = rng.randint(-200, 200)
        if n == 0 or m == 0:
            continue
        assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(8) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_power_sum_identity():
    # Faulhaber: sum_{i=0}^{m-1} i^k = 1/(k+1) sum_j C(k+1,j) B_j m^(k+1-j)
    for k in range(0, 11):
        for m in (1, 2, 5, 13):
            lhs = sum(Fraction(i) ** k for i in range(m))
            rhs = sum(
                math.comb(k + 1, j) * bernoulli(j) * Fraction(m) ** (k + 1 - j)
                for j in range(k + 1)
            ) / (k + 1)
            assert lhs == rhs, (k, m)


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(49) == [1, 7, 49]


def test_sigma_values():
    assert sigma(3, 1) == 1
    assert sigma(3, Fraction(1, 2)) == 0
    assert sigma(3, 6) == 252
    assert sigma(0, 12) == 6
    assert sigma(-1, 4) == Fraction(7, 4)
    # fractional exponent falls back to floats
    val = sigma(Fraction(1, 2), 4)
    assert val == pytest.approx(1 + 2**0.5 + 2.0)
    assert sigma(3, -5) == 0
    assert sigma(3, 2.0) == 9


def test_phase_arithmetic():
    x = Phase(Fraction(-10, 9))
    assert x.value == Fraction(8, 9)
    assert Phase(Fraction(1, 3)) + Phase(Fraction(5, 6)) == Phase(Fraction(1, 6))
    assert -Phase(Fraction(1, 4)) == Phase(Fraction(3, 4))
    assert Phase(Fraction(1, 6)) * 3 == Phase(Fraction(1, 2))
    assert Phase(Fraction(1, 6)) * Fraction(1, 2) == Phase(Fraction(1, 12))
    assert Phase(2) == Phase(0)
    assert Phase(Fraction(3, 4)) - Phase(Fraction(1, 2)) == Phase(Fraction(1, 4))


def test_e_of_values():
    z = e_of(Phase(0))
    assert z.re == 1.0 and z.im == 0.0
    z = e_of(Phase(Fraction(1, 2)))
    assert z.re == pytest.approx(-1.0) and abs(z.im) < 1e-15
    z = e_of(Phase(Fraction(1, 8)))
    root2_half = math.sqrt(2) / 2
    assert z.re == pytest.approx(root2_half, abs=1e-15)
    assert z.im == pytest.approx(root2_half, abs=1e-15)


def test_e_of_high_precision():
    z = e_of(Phase(Fraction(1, 3)), precision=120)
    import mpmath

    with mpmath.workprec(140):
        want = mpmath.expjpi(mpmath.mpf(2) / 3)
        assert abs(z.re - want.real) < 1e-35
        assert abs(z.im - want.imag) < 1e-35
    assert z.err <= 2.0**-119
