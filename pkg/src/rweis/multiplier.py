"""Multiplier systems of rational-power eta-quotients on Gamma0(N).

The general character is the four-case Dedekind-sum formula; for prime level
there are closed forms on special matrices (four families), Kronecker-symbol
formulas for integer exponents, and a triviality test.  All values are exact
phases in Q/Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arith import Phase, dedekind_sum, kronecker
from .cover import CoverElement


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _lcm_denominator(values) -> int:
    out = 1
    for v in values:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out


@dataclass(frozen=True)
class EtaQuotientSpec:
    """A product of eta(n*tau)^{r_n} over divisors n of the level."""

    level: int
    exponents: dict

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        exps = {int(n): Fraction(r) for n, r in self.exponents.items()}
        for n in exps:
            if n < 1 or self.level % n:
                raise ValueError(f"{n} does not divide the level {self.level}")
        object.__setattr__(self, "exponents", exps)

    @cached_property
    def weight(self) -> Fraction:
        """k' = (1/2) sum of the exponents."""
        return sum(self.exponents.values(), Fraction(0)) / 2

    @cached_property
    def cover_d(self) -> int:
        """Minimal D with D*r_n integral for every exponent."""
        return _lcm_denominator(self.exponents.values())

    @property
    def cover_order(self) -> int:
        return 2 * self.cover_d

    @cached_property
    def offset(self) -> Fraction:
        """Leading q-exponent, (1/24) sum n*r_n."""
        return sum((n * r for n, r in self.exponents.items()), Fraction(0)) / 24


@dataclass(frozen=True)
class PrimeLevelSpec:
    """Level-p eta-quotient data eta^{r1}(tau) eta^{rp}(p tau)."""

    p: int
    r1: Fraction
    rp: Fraction

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "r1", Fraction(self.r1))
        object.__setattr__(self, "rp", Fraction(self.rp))

    @property
    def n_inf(self) -> Fraction:
        return (self.r1 + self.p * self.rp) / 24

    @property
    def n_one(self) -> Fraction:
        return (self.p * self.r1 + self.rp) / 24

    @property
    def kprime(self) -> Fraction:
        return (self.r1 + self.rp) / 2

    @property
    def m_inf(self) -> int:
        return self.n_inf.denominator

    @property
    def m_one(self) -> int:
        return self.n_one.denominator

    @property
    def cover_d(self) -> int:
        return _lcm_denominator((self.r1, self.rp))

    @property
    def cover_order(self) -> int:
        return 2 * self.cover_d

    def eta_spec(self) -> EtaQuotientSpec:
        return EtaQuotientSpec(self.p, {1: self.r1, self.p: self.rp})


def chi_general(spec: EtaQuotientSpec, g: CoverElement) -> Phase:
    """chi(g) = eps^{-2Dk'} e(v(a,b,c,d)), the eta-quotient multiplier system.

    v is the four-case Dedekind-sum expression; the case split follows the
    sign of c, then the sign of a when c = 0.
    """
    if g.c % spec.level:
        raise ValueError("matrix is not in Gamma0(level)")
    if g.D2 != spec.cover_order:
        raise ValueError(f"cover order {g.D2} != spec order {spec.cover_order}")
    a, b, c, d = g.matrix
    kp = spec.weight
    sum_nr = 24 * spec.offset
    if c > 0:
        v = (
            Fraction(a + d, 24 * c) * sum_nr
            + sum(
                (r * dedekind_sum(-d, c // n) for n, r in spec.exponents.items()),
                Fraction(0),
            )
            / 2
            - kp / 4
        )
    elif c < 0:
        v = (
            Fraction(a + d, 24 * c) * sum_nr
            + sum(
                (r * dedekind_sum(d, -c // n) for n, r in spec.exponents.items()),
                Fraction(0),
            )
            / 2
            + kp / 4
        )
    elif a > 0:
        v = Fraction(b, 24) * sum_nr
    else:
        v = -Fraction(b, 24) * sum_nr - kp / 2
    # eps^{-2Dk'} = e(-D2 * k' * eps)
    return Phase(v - g.D2 * kp * g.eps.value)


def chi_T_and_cusp1(spec: PrimeLevelSpec) -> tuple[Phase, Phase]:
    """(chi(T~), chi(g1~ T~^p g1~^-1)) = (e(n_inf), e(n_one))."""
    return Phase(spec.n_inf), Phase(spec.n_one)


def special_matrix(p: int, family: int, t: int) -> tuple[int, int, int, int]:
    """The Gamma0(p) matrix of the given closed-form family."""
    if family == 1:
        return (-t, -1, p, (p - 1) // t)
    if family == 2:
        return (t, 1, p, (p + 1) // t)
    if family == 3:
        return (-t * (p + 1) // 2, -(p - 1) // 2, p, (p - 2) // t)
    if family == 4:
        return (t * (p + 1) // 2, (p + 3) // 2, p, (p + 2) // t)
    raise ValueError("family must be 1, 2, 3 or 4")


def chi_special(spec: PrimeLevelSpec, family: int, t: int) -> Phase:
    """Closed forms for chi on the four special-matrix families.

    Family 1 needs t | p-1, family 2 needs t | p+1; families 3 and 4 need
    p >= 3 and t | p-2 resp. t | p+2.
    """
    p, r1, rp = spec.p, spec.r1, spec.rp
    if t < 1:
        raise ValueError("t must be a positive integer")
    if family == 1:
        if (p - 1) % t:
            raise ValueError(f"{t} does not divide p-1")
        return Phase((r1 + rp) * Fraction(p - (t * t + 3 * t + 1), 24 * t))
    if family == 2:
        if (p + 1) % t:
            raise ValueError(f"{t} does not divide p+1")
        return Phase((-r1 + rp) * Fraction(p + t * t - 3 * t + 1, 24 * t))
    if family == 3:
        if p < 3 or (p - 2) % t:
            raise ValueError("needs p >= 3 and t | p-2")
        return Phase(
            r1 * Fraction(p - (3 * t * t + 6 * t + 2), 48 * t)
            + rp * Fraction((2 - t * t) * p - (t * t + 6 * t + 4), 48 * t)
        )
    if family == 4:
        if p < 3 or (p + 2) % t:
            raise ValueError("needs p >= 3 and t | p+2")
        return Phase(
            r1 * Fraction(-p - (t * t - 6 * t + 2), 48 * t)
            + rp * Fraction((t * t + 2) * p + t * t - 6 * t + 4, 48 * t)
        )
    raise ValueError("family must be 1, 2, 3 or 4")


def chi_integer(spec: PrimeLevelSpec, g: CoverElement) -> Phase:
    """Kronecker-symbol form of chi for integer exponents with n_inf integral.

    p >= 5: (d|p)^rp.  p = 3: (d|3)^r3 e(-r3 c(a+d)/9).  p = 2:
    (c/2|a)^r2 e(r2 (a(c/2-1)+1)/8).  Nontrivial eps contributes
    eps^{-2Dk'} exactly as in chi_general.
    """
    if spec.r1.denominator != 1 or spec.rp.denominator != 1:
        raise ValueError("exponents must be integers")
    if spec.n_inf.denominator != 1:
        raise ValueError("requires n_inf in Z, i.e. r1 + p*rp in 24Z")
    if g.c % spec.p:
        raise ValueError("matrix is not in Gamma0(p)")
    a, _, c, d = g.matrix
    p = spec.p
    rp = spec.rp.numerator
    if p >= 5:
        sym = kronecker(d, p)
        v = Fraction(0) if (sym == 1 or rp % 2 == 0) else Fraction(1, 2)
    elif p == 3:
        sym = kronecker(d, 3)
        v = Fraction(0) if (sym == 1 or rp % 2 == 0) else Fraction(1, 2)
        v += Fraction(-rp * c * (a + d), 9)
    else:
        sym = kronecker(c // 2, a)
        v = Fraction(0) if (sym == 1 or rp % 2 == 0) else Fraction(1, 2)
        v += Fraction(rp * (a * (c // 2 - 1) + 1), 8)
    return Phase(v - g.D2 * spec.kprime * g.eps.value)


def is_trivial_condition3(spec: PrimeLevelSpec) -> bool:
    """Whether r1 in 2Z, r1+rp in 4Z and p*r1+rp in 24Z.

    These force the multiplier system to be trivial on Gamma0(p) lifts; the
    standing hypothesis n_inf in Z is checked first.
    """
    if spec.n_inf.denominator != 1:
        raise ValueError("requires n_inf in Z, i.e. r1 + p*rp in 24Z")
    return (
        spec.r1 % 2 == 0
        and (spec.r1 + spec.rp) % 4 == 0
        and (spec.p * spec.r1 + spec.rp) % 24 == 0
    )
