"""The even-order metaplectic cover of the modular group.

A cover element is a pair: an integer unimodular matrix and a root of unity
eps of order dividing D2, standing for the branch function eps*(c*tau+d)^(1/D2).
Composition multiplies the branch functions, so it picks up a D2-th root of
unity delta from the principal-branch defect; eps stays exact in Q/Z, delta
is evaluated numerically at one sample point and rounded to the lattice
(the cocycle is independent of the sample point; tests probe this).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Phase

DELTA_TOL = 1e-6
_TAU_SAMPLE = 1j


@dataclass(frozen=True)
class CoverElement:
    a: int
    b: int
    c: int
    d: int
    D2: int
    eps: Phase = field(default_factory=Phase)

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix is not unimodular")
        if self.D2 < 2 or self.D2 % 2:
            raise ValueError("cover order must be a positive even integer")
        if (self.eps.value * self.D2).denominator != 1:
            raise ValueError("eps must be a root of unity of order dividing D2")

    @property
    def matrix(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.matrix == (1, 0, 0, 1) and self.eps == Phase(0)

    def __repr__(self):
        return f"CoverElement({self.a},{self.b};{self.c},{self.d}; e({self.eps.value}), D2={self.D2})"


def lift(a: int, b: int, c: int, d: int, D2: int) -> CoverElement:
    """The lift of a unimodular matrix, with trivial root of unity."""
    return CoverElement(a, b, c, d, D2, Phase(0))


def identity(D2: int) -> CoverElement:
    return lift(1, 0, 0, 1, D2)


def _principal_root(z: complex, order: int) -> complex:
    return cmath.exp(cmath.log(z) / order)


def branch_index(g1: CoverElement, g2: CoverElement, tau: complex = _TAU_SAMPLE) -> int:
    """The integer j with delta(g1, g2) = e(j/D2), rounded from one sample point.

    delta is the quotient of principal D2-th roots
    (c1*(g2 tau) + d1)^(1/D2) (c2 tau + d2)^(1/D2) / (c3 tau + d3)^(1/D2)
    where c3 tau + d3 belongs to the product matrix.  Roots of unity are
    separated by 2*pi/D2, so binary64 rounding is safe for moderate D2; a
    residual above DELTA_TOL signals a branch-evaluation bug and raises.
    """
    m = g1.D2
    w2 = g2.c * tau + g2.d
    g2tau = (g2.a * tau + g2.b) / w2
    c3 = g1.c * g2.a + g1.d * g2.c
    d3 = g1.c * g2.b + g1.d * g2.d
    delta = (
        _principal_root(g1.c * g2tau + g1.d, m)
        * _principal_root(w2, m)
        / _principal_root(c3 * tau + d3, m)
    )
    j = round(cmath.phase(delta) * m / (2 * math.pi)) % m
    residual = abs(delta - cmath.exp(2j * math.pi * j / m))
    if residual > DELTA_TOL:
        raise ArithmeticError(
            f"branch defect {delta} is not close to a {m}-th root of unity "
            f"(residual {residual:.3e})"
        )
    return j


def compose(g1: CoverElement, g2: CoverElement) -> CoverElement:
    if g1.D2 != g2.D2:
        raise ValueError("cover orders do not match")
    j = branch_index(g1, g2)
    return CoverElement(
        g1.a * g2.a + g1.b * g2.c,
        g1.a * g2.b + g1.b * g2.d,
        g1.c * g2.a + g1.d * g2.c,
        g1.c * g2.b + g1.d * g2.d,
        g1.D2,
        g1.eps + g2.eps + Phase(Fraction(j, g1.D2)),
    )


def invert(g: CoverElement) -> CoverElement:
    """The inverse: compose(g, invert(g)) is the identity with eps = 0."""
    inv = CoverElement(g.d, -g.b, -g.c, g.a, g.D2, Phase(0))
    j = branch_index(g, inv)
    return CoverElement(
        inv.a, inv.b, inv.c, inv.d, g.D2, -(g.eps + Phase(Fraction(j, g.D2)))
    )


def word(letters, D2: int) -> CoverElement:
    """Compose a word given as (matrix, exponent) pairs of lifts.

    ``letters`` is an iterable of ((a,b,c,d), e) with integer e; negative
    exponents use the cover inverse.
    """
    out = identity(D2)
    for mat, e in letters:
        g = lift(*mat, D2)
        if e < 0:
            g, e = invert(g), -e
        for _ in range(e):
            out = compose(out, g)
    return out
