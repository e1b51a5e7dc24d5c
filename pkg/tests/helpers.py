"""Shared test utilities: small independent oracles and matrix generators."""

import math
import random
from fractions import Fraction

from rweis.arith import sawtooth


def dedekind_literal(h: int, k: int) -> Fraction:
    """s(h,k) straight from the definition, via the sawtooth function."""
    return sum(
        (sawtooth(Fraction(r, k)) * sawtooth(Fraction(h * r, k)) for r in range(k)),
        Fraction(0),
    )


def totient(n: int) -> int:
    count = 0
    for r in range(n):
        if math.gcd(r, n) == 1:
            count += 1
    return count


def mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def complete_unimodular(c: int, d: int) -> tuple[int, int]:
    """Some (a, b) with a*d - b*c = 1, for coprime (c, d)."""
    g, x, y = ext_gcd(d, -c)
    if g == -1:
        x, y = -x, -y
        g = 1
    assert g == 1, (c, d)
    return x, y


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd-like (g may be negative)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def random_gamma0(rng: random.Random, p: int, bound: int = 50) -> tuple[int, int, int, int]:
    """A random element of Gamma0(p) with c a multiple of p."""
    while True:
        c = p * rng.randint(-bound, bound)
        d = rng.randint(-bound, bound)
        if math.gcd(c, d) == 1:
            break
    a, b = complete_unimodular(c, d)
    # randomize the completion: (a, b) -> (a + t*c, b + t*d)
    t = rng.randint(-3, 3)
    return a + t * c, b + t * d, c, d


def random_rational(rng: random.Random, max_num: int = 30, dens=(1, 2, 3, 4, 6, 9)) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.choice(dens))
