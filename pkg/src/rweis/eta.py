"""Exact q-expansions of rational-power eta-quotients, cusp orders, and
numeric evaluation on the upper half-plane.

A FracSeries is a truncated series q^offset * sum coeffs[j] q^j with an
exact rational offset and exact rational coefficients.  Rational powers of
unit series (leading coefficient 1) are computed by the logarithmic
derivative recurrence f g' = r f' g, staying in exact rationals.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import ComplexApprox
from .multiplier import EtaQuotientSpec


@dataclass(frozen=True)
class FracSeries:
    offset: Fraction
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        """Truncation order: coefficients are exact up to q^(offset+order)."""
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "FracSeries":
        return FracSeries(self.offset, self.coeffs[: order + 1])

    def with_offset(self, offset) -> "FracSeries":
        return FracSeries(offset, self.coeffs)

    def __mul__(self, other: "FracSeries") -> "FracSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, ci in enumerate(self.coeffs[: order + 1]):
            if not ci:
                continue
            for j in range(order + 1 - i):
                cj = other.coeffs[j]
                if cj:
                    out[i + j] += ci * cj
        return FracSeries(self.offset + other.offset, out)

    def spread(self, step: int) -> "FracSeries":
        """Substitute q -> q^step (offset scales too)."""
        out = [Fraction(0)] * (self.order * step + 1)
        for j, c in enumerate(self.coeffs):
            out[j * step] = c
        return FracSeries(self.offset * step, out)

    def to_json(self) -> str:
        return json.dumps(
            {"offset": str(self.offset), "coeffs": [str(c) for c in self.coeffs]}
        )

    @classmethod
    def from_json(cls, text: str) -> "FracSeries":
        data = json.loads(text)
        return cls(Fraction(data["offset"]), [Fraction(c) for c in data["coeffs"]])


def eta_integer_series(terms: int) -> FracSeries:
    """q-expansion of eta to order `terms`: offset 1/24, unit part by the
    pentagonal number theorem prod (1-q^n) = sum_j (-1)^j q^(j(3j-1)/2)."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    coeffs = [Fraction(0)] * (terms + 1)
    j = 0
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > terms and g2 > terms:
            break
        sign = -1 if j % 2 else 1
        if g1 <= terms:
            coeffs[g1] += sign
        if j and g2 <= terms:
            coeffs[g2] += sign
        j += 1
    return FracSeries(Fraction(1, 24), coeffs)


def series_rational_power(f: FracSeries, r) -> FracSeries:
    """The unit-series power f^r for rational r, leading coefficient pinned to 1.

    Does not touch the offset (returns offset 0): this is the pure formal
    power of the unit part, g_n = (1/n) sum_{j=1..n} ((r+1)j - n) f_j g_{n-j}.
    """
    if f.coeffs[0] != 1:
        raise ValueError("series must have leading coefficient 1")
    r = Fraction(r)
    n_max = f.order
    g = [Fraction(1)] + [Fraction(0)] * n_max
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            fj = f.coeffs[j]
            if fj:
                acc += ((r + 1) * j - n) * fj * g[n - j]
        g[n] = acc / n
    return FracSeries(Fraction(0), g)


def eta_quotient_series(spec: EtaQuotientSpec, terms: int) -> FracSeries:
    """Exact expansion prod eta(n tau)^{r_n} = q^offset (1 + A(1) q + ...)."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    result = FracSeries(Fraction(0), [Fraction(1)] + [Fraction(0)] * terms)
    for n, r in sorted(spec.exponents.items()):
        if not r or n > terms:
            # (1 - q^n)^r = 1 + O(q^n) contributes nothing below q^(terms+1)
            continue
        base = eta_integer_series(terms // n).with_offset(0)
        powered = series_rational_power(base, r)
        expanded = powered.spread(n).truncate(terms)
        if expanded.order < terms:
            coeffs = list(expanded.coeffs) + [Fraction(0)] * (terms - expanded.order)
            expanded = FracSeries(0, coeffs)
        result = result * expanded
    return result.with_offset(spec.offset)


def order_at_cusp(spec: EtaQuotientSpec, a: int, c: int) -> Fraction:
    """Order of the eta-quotient at the cusp a/c: (1/24) sum r_n gcd(n,c)^2/n."""
    if c < 1:
        raise ValueError("c must be a positive integer")
    if math.gcd(a, c) != 1:
        raise ValueError("cusp a/c needs gcd(a, c) = 1")
    return (
        sum(
            (r * Fraction(math.gcd(n, c) ** 2, n) for n, r in spec.exponents.items()),
            Fraction(0),
        )
        / 24
    )


def _log_eta(tau: complex, tol: float) -> tuple[complex, float]:
    """log eta(tau) = pi i tau/12 + sum log(1 - q^n), with a tail bound."""
    q = cmath.exp(2j * math.pi * tau)
    aq = abs(q)
    total = 1j * math.pi * tau / 12
    qn = 1.0 + 0j
    n = 0
    # tail of sum log(1-q^n) is bounded by |q|^(n+1)/((1-|q|)(1-|q|^(n+1)))
    while True:
        n += 1
        qn *= q
        total += cmath.log(1 - qn)
        tail = aq ** (n + 1) / ((1 - aq) * (1 - aq ** (n + 1)))
        if tail < tol:
            return total, tail


def eval_eta_quotient(spec: EtaQuotientSpec, tau: complex, precision: int = 53) -> ComplexApprox:
    """Numeric value of prod eta(n tau)^{r_n} at tau in the upper half-plane.

    Logarithms are combined before the single exponential, so wildly
    different magnitudes of the factors cannot underflow.
    """
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    if precision > 53:
        return _eval_eta_quotient_mp(spec, tau, precision)
    tol = 2.0 ** (-precision - 6)
    total = 0j
    log_err = 0.0
    for n, r in spec.exponents.items():
        if not r:
            continue
        val, tail = _log_eta(n * tau, tol)
        total += float(r) * val
        log_err += abs(float(r)) * (tail + 1e-14 * abs(val))
    z = cmath.exp(total)
    err = abs(z) * (log_err + 1e-15) / (1 - min(0.5, log_err))
    return ComplexApprox(z.real, z.imag, err)


def _eval_eta_quotient_mp(spec: EtaQuotientSpec, tau, precision: int) -> ComplexApprox:
    import mpmath

    with mpmath.workprec(precision + 20):
        tau = mpmath.mpc(tau)
        tol = mpmath.mpf(2) ** (-precision - 10)
        total = mpmath.mpc(0)
        for n, r in spec.exponents.items():
            if not r:
                continue
            tn = n * tau
            q = mpmath.exp(2j * mpmath.pi * tn)
            val = 1j * mpmath.pi * tn / 12
            qn = mpmath.mpc(1)
            aq = abs(q)
            m = 0
            while True:
                m += 1
                qn *= q
                val += mpmath.log(1 - qn)
                if aq ** (m + 1) / ((1 - aq) * (1 - aq ** (m + 1))) < tol:
                    break
            total += mpmath.mpf(r.numerator) / r.denominator * val
        z = mpmath.exp(total)
        err = float(abs(z) * mpmath.mpf(2) ** (-precision + 1))
        return ComplexApprox(z.real, z.imag, err)
