"""Fourier-coefficient engines for rational-weight Eisenstein series at the
two cusps of Gamma0(p).

The cusp-at-infinity series is 1 + pref * sum_n n^(k-1) q^n sum_c c^-k S(c,n)
where S(c,n) sums e((-n_inf a + (n-n_inf)d)/(pc) - (r1 s(-d,pc)+rp s(-d,c))/2)
over d coprime to pc, a = d^-1 mod pc, and pref is
(-1)^((k-k')/2) (2pi)^k / (Gamma(k) p^k).  The cusp-1 series is analogous
with the (a,b) completion a = d^-1 mod c, p | a+c, a+c > 0 and prefactor
m_inf^k in place of p^k.  Inner sums run on the exact-integer numba kernels
when the moduli fit int64 and precision is binary64; otherwise an exact
Phase-arithmetic Python path takes over.  Per-c sums are combined in
ascending c with compensated summation, so results do not depend on the
thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .arith import ComplexApprox, Phase, bernoulli, dedekind_sum, e_of, kronecker, sigma
from .multiplier import PrimeLevelSpec

CUSPS = ("infty", "one")


@dataclass(frozen=True)
class EisensteinParams:
    spec: PrimeLevelSpec
    k: Fraction
    cusp: str = "infty"
    c_max: int = 2000
    precision: int = 53

    def __post_init__(self):
        object.__setattr__(self, "k", Fraction(self.k))
        if self.k <= 2:
            raise ValueError("weight must be greater than 2")
        if ((self.k - self.spec.kprime) / 2).denominator != 1:
            raise ValueError("weight must lie in k' + 2Z")
        if self.cusp not in CUSPS:
            raise ValueError(f"cusp must be one of {CUSPS}")
        if self.cusp == "infty" and self.spec.n_inf.denominator != 1:
            raise ValueError("cusp infty needs n_inf integral (chi(T~) = 1)")
        if self.cusp == "one" and self.spec.n_one.denominator != 1:
            raise ValueError("cusp one needs n_one integral")
        if self.c_max < 1:
            raise ValueError("c_max must be positive")

    @property
    def sign(self) -> int:
        return -1 if ((self.k - self.spec.kprime) // 2) % 2 else 1


@dataclass(frozen=True)
class CoeffResult:
    n: Fraction
    value: ComplexApprox
    tail_bound: float
    c_max: int

    def to_json_dict(self) -> dict:
        return {
            "n": str(Fraction(self.n)),
            "re": float(self.value.re),
            "im": float(self.value.im),
            "tail_bound": self.tail_bound,
            "c_max": self.c_max,
        }


def _exponent_numbers(r1: Fraction, rp: Fraction) -> tuple[int, int, int]:
    """(R1, Rp, V) with r1 = R1/V and rp = Rp/V."""
    v = r1.denominator * rp.denominator // math.gcd(r1.denominator, rp.denominator)
    return int(r1 * v), int(rp * v), v


def phases_infty(spec: PrimeLevelSpec, n: int, c: int) -> list[Phase]:
    """Exact term phases of the cusp-infinity inner sum, ascending d."""
    if spec.n_inf.denominator != 1:
        raise ValueError("cusp infty needs n_inf integral")
    p = spec.p
    pc = p * c
    n_inf = spec.n_inf
    out = []
    for d in range(pc):
        if math.gcd(d, pc) != 1:
            continue
        a = pow(d, -1, pc)
        out.append(
            Phase(
                Fraction(-n_inf * (a + d) + n * d, pc)
                - (spec.r1 * dedekind_sum(-d, pc) + spec.rp * dedekind_sum(-d, c)) / 2
            )
        )
    return out


def complete_matrix_cusp1(p: int, c: int, d: int, shift: int = 0) -> tuple[int, int]:
    """(a, b) with ad - bc = 1, p | a+c and a+c > 0, for gcd(c,d)=gcd(c,p)=1.

    a is the CRT solution of a = d^-1 mod c, a = -c mod p in [0, pc), plus
    shift*pc; b = (ad-1)/c is then exact.
    """
    if c < 1:
        raise ValueError("c must be positive")
    if math.gcd(c, d) != 1 or math.gcd(c, p) != 1:
        raise ValueError("needs gcd(c,d) = gcd(c,p) = 1")
    ic = pow(d % c, -1, c) if c > 1 else 0
    t = ((-c - ic) * pow(c, -1, p)) % p
    a = ic + c * t + shift * p * c
    if a + c <= 0:
        a += ((-a - c) // (p * c) + 1) * p * c
    b = (a * d - 1) // c
    assert a * d - b * c == 1
    return a, b


def phases_one(spec: PrimeLevelSpec, n: int, c: int, shift: int = 0) -> list[Phase]:
    """Exact term phases of the cusp-1 inner sum, ascending d.

    The completion (a, b) may be shifted by multiples of (pc, pd); phases do
    not depend on the choice.
    """
    if spec.n_one.denominator != 1:
        raise ValueError("cusp one needs n_one integral")
    p = spec.p
    if c % p == 0:
        return []
    m_inf = spec.m_inf
    out = []
    for d in range(c * m_inf):
        if math.gcd(d, c) != 1:
            continue
        a, b = complete_matrix_cusp1(p, c, d, shift=shift)
        big_a = a + c
        out.append(
            Phase(
                Fraction(d * n, c * m_inf)
                - spec.n_inf * Fraction(a + b + d, big_a)
                - (
                    spec.r1 * dedekind_sum(-b - d, big_a)
                    + spec.rp * dedekind_sum(-b - d, big_a // p)
                )
                / 2
            )
        )
    return out


def _sum_phases(phases, precision: int) -> ComplexApprox:
    if not phases:
        return ComplexApprox(0.0, 0.0, 0.0)
    if precision <= 53:
        zs = [e_of(ph).as_complex() for ph in phases]
        re = math.fsum(z.real for z in zs)
        im = math.fsum(z.imag for z in zs)
        return ComplexApprox(re, im, len(zs) * 2.0**-50)
    vals = [e_of(ph, precision) for ph in phases]
    re = sum(v.re for v in vals)
    im = sum(v.im for v in vals)
    return ComplexApprox(re, im, len(vals) * 2.0 ** (2 - precision))


def exp_sum_infty(spec: PrimeLevelSpec, n: int, c: int, precision: int = 53) -> ComplexApprox:
    """The inner exponential sum over d for a single c, exact phases."""
    return _sum_phases(phases_infty(spec, n, c), precision)


def exp_sum_one(spec: PrimeLevelSpec, n: int, c: int, precision: int = 53) -> ComplexApprox:
    """Cusp-1 inner exponential sum for a single c (zero when p | c)."""
    return _sum_phases(phases_one(spec, n, c), precision)


def infty_inner_sums(
    spec: PrimeLevelSpec, n_values, c_max: int, precision: int = 53, threads=None
):
    """Per-c inner sums S(c, n) for c = 1..c_max, as a list of rows.

    Kernel-backed when exact int64 phases fit; exact Python otherwise.
    """
    n_values = [int(n) for n in n_values]
    r1, rp = spec.r1, spec.rp
    R1, Rp, V = _exponent_numbers(r1, rp)
    n_inf = int(spec.n_inf)
    n_hi = max([abs(n) for n in n_values], default=1)
    if precision <= 53 and _kernels.infty_bounds_ok(spec.p, c_max, n_hi, n_inf, R1, Rp, V):
        _kernels.apply_threads(threads)
        out = np.zeros((c_max, len(n_values)), np.complex128)
        _kernels.exp_sums_infty_exact(
            spec.p, c_max, np.asarray(n_values, np.int64), n_inf, R1, Rp, V, out
        )
        return out
    return [
        [exp_sum_infty(spec, n, c, precision).as_complex() if precision <= 53
         else exp_sum_infty(spec, n, c, precision) for n in n_values]
        for c in range(1, c_max + 1)
    ]


def one_inner_sums(
    spec: PrimeLevelSpec, n_values, c_max: int, precision: int = 53, threads=None
):
    """Per-c inner sums of the cusp-1 expansion (rows with p | c are zero)."""
    n_values = [int(n) for n in n_values]
    R1, Rp, V = _exponent_numbers(spec.r1, spec.rp)
    m_inf = spec.m_inf
    W = spec.n_inf.numerator
    n_hi = max([abs(n) for n in n_values], default=1)
    if precision <= 53 and _kernels.one_bounds_ok(spec.p, c_max, n_hi, W, m_inf, R1, Rp, V):
        _kernels.apply_threads(threads)
        out = np.zeros((c_max, len(n_values)), np.complex128)
        _kernels.exp_sums_one_exact(
            spec.p, c_max, np.asarray(n_values, np.int64), W, m_inf, R1, Rp, V, out
        )
        return out
    return [
        [exp_sum_one(spec, n, c, precision).as_complex() if precision <= 53
         else exp_sum_one(spec, n, c, precision) for n in n_values]
        for c in range(1, c_max + 1)
    ]


def _gamma_value(k, precision: int) -> float:
    from .gamma import gamma_reference

    return gamma_reference(k, precision).re


def _prefactor(params: EisensteinParams) -> float:
    k = float(params.k)
    base = float(params.spec.p) if params.cusp == "infty" else float(params.spec.m_inf)
    return params.sign * (2 * math.pi) ** k / (_gamma_value(params.k, params.precision) * base**k)


def _tail_bound(params: EisensteinParams, n: int) -> float:
    """Crude truncation bound: each dropped term has modulus 1, at most
    p*c (cusp infty) or m_inf*c (cusp 1) terms per c, and
    sum_{c > C} c^(1-k) <= C^(2-k)/(k-2)."""
    k = float(params.k)
    count = float(params.spec.p) if params.cusp == "infty" else float(params.spec.m_inf)
    return (
        abs(_prefactor(params))
        * float(n) ** (k - 1)
        * count
        * params.c_max ** (2.0 - k)
        / (k - 2.0)
    )


def _assemble(params: EisensteinParams, n: int, rows, col: int) -> CoeffResult:
    k = float(params.k)
    pref = _prefactor(params)
    scale = pref * float(n) ** (k - 1.0)
    tail = _tail_bound(params, n)
    index = Fraction(n) if params.cusp == "infty" else Fraction(n, params.spec.m_inf)
    if params.precision <= 53:
        weighted = [
            complex(rows[c - 1][col]) * (float(c) ** -k) for c in range(1, params.c_max + 1)
        ]
        re = math.fsum(z.real for z in weighted) * scale
        im = math.fsum(z.imag for z in weighted) * scale
    else:
        import mpmath

        with mpmath.workprec(params.precision + 10):
            kq = Fraction(params.k)
            kmp = mpmath.mpf(kq.numerator) / kq.denominator
            re = im = mpmath.mpf(0)
            for c in range(1, params.c_max + 1):
                w = mpmath.mpf(c) ** -kmp
                z = rows[c - 1][col]
                re += z.re * w
                im += z.im * w
            re *= scale
            im *= scale
    value = ComplexApprox(re, im, tail + 2.0**-40)
    return CoeffResult(index, value, tail, params.c_max)


def coeff_infty(params: EisensteinParams, n: int) -> CoeffResult:
    """Coefficient of q^n of the cusp-infinity series; n = 0 is exactly 1."""
    if params.cusp != "infty":
        raise ValueError("params.cusp must be 'infty'")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return CoeffResult(Fraction(0), ComplexApprox(1.0, 0.0, 0.0), 0.0, params.c_max)
    rows = infty_inner_sums(params.spec, [n], params.c_max, params.precision)
    return _assemble(params, n, rows, 0)


def coeff_one(params: EisensteinParams, n: int) -> CoeffResult:
    """Coefficient of q^(n/m_inf) of the cusp-1 series, n >= 1."""
    if params.cusp != "one":
        raise ValueError("params.cusp must be 'one'")
    if n < 1:
        raise ValueError("n must be positive")
    rows = one_inner_sums(params.spec, [n], params.c_max, params.precision)
    return _assemble(params, n, rows, 0)


def qexpansion(params: EisensteinParams, n_max: int, c_max=None) -> list[CoeffResult]:
    """Coefficients up to n_max in one shared sweep over c."""
    if c_max is not None:
        params = EisensteinParams(params.spec, params.k, params.cusp, c_max, params.precision)
    if params.cusp == "infty":
        ns = list(range(1, n_max + 1))
        rows = infty_inner_sums(params.spec, ns, params.c_max, params.precision)
        out = [coeff_infty(params, 0)]
        out.extend(_assemble(params, n, rows, j) for j, n in enumerate(ns))
        return out
    ns = list(range(1, n_max + 1))
    rows = one_inner_sums(params.spec, ns, params.c_max, params.precision)
    return [_assemble(params, n, rows, j) for j, n in enumerate(ns)]


def kloosterman(r3_mod6: int, m: int, n: int, c: int, precision: int = 53) -> ComplexApprox:
    """K(psi, m, n; c) = sum_{r mod c, gcd(r,c)=1} psi(r) e((mr + n r^-1)/c)
    with psi = (.|3)^r3; exact phases, one rounding per term."""
    if c < 1:
        raise ValueError("c must be positive")
    phases = []
    signs = []
    for r in range(c):
        if math.gcd(r, c) != 1:
            continue
        sym = kronecker(r, 3)
        if sym == 0 and r3_mod6 % 6 != 0:
            continue
        signs.append(-1 if (sym == -1 and r3_mod6 % 2) else 1)
        rinv = pow(r, -1, c)
        phases.append(Phase(Fraction(m * r + n * rinv, c)))
    if precision <= 53:
        re = math.fsum(s * e_of(ph).re for s, ph in zip(signs, phases))
        im = math.fsum(s * e_of(ph).im for s, ph in zip(signs, phases))
        return ComplexApprox(re, im, len(phases) * 2.0**-50)
    vals = [e_of(ph, precision) for ph in phases]
    re = sum(s * v.re for s, v in zip(signs, vals))
    im = sum(s * v.im for s, v in zip(signs, vals))
    return ComplexApprox(re, im, len(phases) * 2.0 ** (2 - precision))


def classical_coeff(p: int, k: int, n: int) -> Fraction:
    """q^n coefficient of the weight-k trivial-character Eisenstein series on
    Gamma0(p): 1 at n=0, else -(2k/B_k) (p^k sigma_{k-1}(n/p) - sigma_{k-1}(n))/(p^k - 1)."""
    if k % 2 or k < 4:
        raise ValueError("k must be an even integer >= 4")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    pk = Fraction(p) ** k
    return (
        -Fraction(2 * k)
        / bernoulli(k)
        / (pk - 1)
        * (pk * sigma(k - 1, Fraction(n, p)) - sigma(k - 1, n))
    )


def coeff_term_direct(params: EisensteinParams, n: int, c: int) -> complex:
    """The single-c contribution pref * n^(k-1) c^-k S(c,n) at the cusp infty."""
    k = float(params.k)
    s = exp_sum_infty(params.spec, n, c, params.precision).as_complex()
    return _prefactor(params) * float(n) ** (k - 1) * float(c) ** -k * s


def coeff_term_kloosterman(r3: int, k: int, n: int, c: int, precision: int = 53) -> complex:
    """The single-c contribution in Kloosterman form, for p = 3 and integer
    exponents (r1, r3) with r1 + 3 r3 in 24Z:
    e(-k/4) (2pi)^k/(k-1)! n^(k-1) (3c)^-k K((.|3)^r3, c^2 r3 + n, c^2 r3; 3c)."""
    if not isinstance(k, int) or k <= 2:
        raise ValueError("k must be an integer > 2")
    kl = kloosterman(r3 % 6, c * c * r3 + n, c * c * r3, 3 * c, precision).as_complex()
    rot = e_of(Phase(Fraction(-k, 4))).as_complex()
    return (
        rot
        * (2 * math.pi) ** k
        / math.factorial(k - 1)
        * float(n) ** (k - 1)
        * float(3 * c) ** -k
        * kl
    )
