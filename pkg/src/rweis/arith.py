"""Exact number-theoretic primitives.

Everything here is exact rational arithmetic (``fractions.Fraction``):
the sawtooth function ((x)), Dedekind sums s(h,k) both by direct summation
and by a logarithmic-time reciprocity chain, the Kronecker-Jacobi symbol,
Bernoulli numbers, divisor power sums, and phases in Q/Z.  The only float
producer is ``e_of``, which turns a phase into the complex number e(x) =
exp(2*pi*i*x) with one rounding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

UNBOUNDED = math.inf


def sawtooth(x) -> Fraction:
    """((x)) = x - [x] - 1/2 for non-integral x, and 0 at integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum_naive(h: int, k: int) -> Fraction:
    """s(h,k) = sum_{r mod k} ((r/k)) ((hr/k)) by direct summation, O(k).

    For 0 < r < k the sawtooth is (2r-k)/(2k), so the whole sum is a single
    integer accumulation over a common denominator 4k^2.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    h %= k
    total = 0
    m = 0
    for r in range(1, k):
        m += h
        if m >= k:
            m -= k
        if m:
            total += (2 * r - k) * (2 * m - k)
    return Fraction(total, 4 * k * k)


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h,k) in O(log k) exact rational steps via the reciprocity law.

    Uses s(h,k) + s(k,h) = -1/4 + (h^2+k^2+1)/(12hk) for coprime h,k,
    together with s(h+k,k) = s(h,k), s(gh,gk) = s(h,k) and s(0,k) = 0.
    The Euclidean chain is evaluated bottom-up so every partial value is a
    genuine Dedekind sum, whose denominator divides 12k; intermediates stay
    small.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    h %= k
    if h == 0:
        return Fraction(0)
    g = math.gcd(h, k)
    h //= g
    k //= g
    chain = []
    while h:
        chain.append((h, k))
        h, k = k % h, h
    num, den = 0, 1
    for hh, kk in reversed(chain):
        # s(hh,kk) = (hh^2 + kk^2 + 1 - 3*hh*kk)/(12*hh*kk) - s(prev)
        tn = hh * hh + kk * kk + 1 - 3 * hh * kk
        td = 12 * hh * kk
        num, den = tn * den - num * td, td * den
        g = math.gcd(num, den)
        num //= g
        den //= g
    return Fraction(num, den)


def kronecker(a: int, n: int) -> int:
    """Kronecker-Jacobi symbol (a|n), defined for all integers a and n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    while n % 2 == 0:
        n //= 2
        if a % 8 in (3, 5):
            result = -result
    # n odd and positive: Jacobi with reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_BERNOULLI = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """B_k from x/(e^x - 1), via the recurrence sum_{j<=k} C(k+1,j) B_j = 0.

    Odd k > 1 give 0; B_1 = -1/2 under this generating function.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2 == 1:
        return Fraction(-1, 2) if k == 1 else Fraction(0)
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        acc = sum(math.comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[k]


def divisors(n: int) -> list[int]:
    """Positive divisors of n >= 1, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(k_minus_1, n):
    """Divisor power sum sigma_{k-1}(n) = sum_{0<d|n} d^{k-1}.

    Returns 0 whenever n is not a positive integer.  Integer exponents give
    an exact Fraction; a fractional or float exponent gives a float.
    """
    if isinstance(n, float) and not n.is_integer():
        return Fraction(0)
    n = Fraction(n)
    if n.denominator != 1 or n <= 0:
        return Fraction(0)
    divs = divisors(n.numerator)
    if isinstance(k_minus_1, float) and not k_minus_1.is_integer():
        return sum(d**k_minus_1 for d in divs)
    e = Fraction(k_minus_1)
    if e.denominator == 1:
        return Fraction(sum(Fraction(d) ** e.numerator for d in divs))
    return sum(float(d) ** float(e) for d in divs)


class Phase:
    """An element of Q/Z; Phase(x) stands for the root of unity e(x).

    Multiplication of roots of unity is addition of phases; raising to a
    rational power scales the phase.  The representative is kept in [0,1).
    """

    __slots__ = ("value",)

    def __init__(self, value=0):
        if isinstance(value, Phase):
            value = value.value
        self.value = Fraction(value) % 1

    def __add__(self, other):
        other = other.value if isinstance(other, Phase) else Fraction(other)
        return Phase(self.value + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = other.value if isinstance(other, Phase) else Fraction(other)
        return Phase(self.value - other)

    def __neg__(self):
        return Phase(-self.value)

    def __mul__(self, scalar):
        return Phase(self.value * Fraction(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = other.value if isinstance(other, Phase) else Fraction(other) % 1
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"Phase({self.value})"


@dataclass(frozen=True)
class ComplexApprox:
    """A complex value with an absolute error bound (inf when unknown)."""

    re: float
    im: float
    err: float = 0.0

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("error bound must be nonnegative")

    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)


def e_of(x, precision: int = 53) -> ComplexApprox:
    """e(x) = exp(2*pi*i*x) for x in Q/Z, with relative error ~2^(1-precision).

    Up to 53 bits this is plain binary64; beyond that mpmath carries the
    computation with ten guard bits.
    """
    x = x.value if isinstance(x, Phase) else Fraction(x) % 1
    if precision <= 53:
        z = cmath.exp(2j * math.pi * float(x))
        return ComplexApprox(z.real, z.imag, 2.0**-51)
    import mpmath

    with mpmath.workprec(precision + 10):
        z = mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator)
        return ComplexApprox(z.real, z.imag, 2.0 ** (1 - precision))
