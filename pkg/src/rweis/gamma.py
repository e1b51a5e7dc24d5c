"""Gamma-function values from Dedekind-sum exponential series.

Gamma(k) for 2 < k <= 4 equals (2pi)^k n^(k-1) / A_2(n;4k,-2k) times the
cusp-infinity exponential sums at level 2, and for 2 < k <= 3 the level-3
analogue; Gamma(z+1) = z Gamma(z) reduces any non-pole argument into the
window.  An independent reference oracle backs the prefactors and the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .arith import ComplexApprox
from .eisenstein import infty_inner_sums
from .eta import eta_quotient_series
from .multiplier import PrimeLevelSpec

ROUTES = ("p2", "p3", "auto")


@dataclass(frozen=True)
class GammaRequest:
    k: object  # Fraction (exact routes) or float (real-argument extension)
    route: str = "auto"
    n_choice: int = 1
    c_max: int = 2000
    precision: int = 53
    extrapolate: bool = False

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"route must be one of {ROUTES}")
        if self.n_choice < 1:
            raise ValueError("n_choice must be a positive integer")
        if self.c_max < 2:
            raise ValueError("c_max must be at least 2")
        if not isinstance(self.k, float):
            object.__setattr__(self, "k", Fraction(self.k))


def gamma_reduce(k, route: str = "auto"):
    """(k0, multiplier, route) with Gamma(k) = multiplier * Gamma(k0) and k0
    in the route window: (2,4] for p2, (2,3] for p3.

    Route auto picks p2 only when k itself lies in (3,4], else p3.  The
    multiplier is an exact Fraction for rational k.
    """
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}")
    exact = not isinstance(k, float)
    k0 = Fraction(k) if exact else float(k)
    if k0 <= 0 and (k0 == int(k0)):
        raise ValueError(f"Gamma has a pole at {k}")
    if route == "auto":
        route = "p2" if 3 < k0 <= 4 else "p3"
    upper = 4 if route == "p2" else 3
    mult = Fraction(1) if exact else 1.0
    while k0 > upper:
        k0 -= 1
        mult *= k0
    while k0 <= 2:
        mult /= k0
        k0 += 1
    return k0, mult, route


def gamma_reference(k, precision: int = 53) -> ComplexApprox:
    """Gamma(k) by a library Lanczos/Stirling-class routine.

    Independent of the exponential-sum engine; relative error well under
    1e-12 in binary64, or 2^(1-precision) via mpmath beyond that.
    """
    kf = float(k)
    if kf <= 0 and kf == int(kf):
        raise ValueError(f"Gamma has a pole at {k}")
    if precision <= 53:
        v = math.gamma(kf)
        return ComplexApprox(v, 0.0, abs(v) * 1e-14)
    import mpmath

    with mpmath.workprec(precision + 10):
        if isinstance(k, float):
            v = mpmath.gamma(k)
        else:
            k = Fraction(k)
            v = mpmath.gamma(mpmath.mpf(k.numerator) / k.denominator)
        return ComplexApprox(v, 0.0, float(abs(v) * 2.0 ** (1 - precision)))


def _route_params(k0, route):
    p = 2 if route == "p2" else 3
    r1 = 4 * k0 if p == 2 else 3 * k0
    rp = -2 * k0 if p == 2 else -k0
    return p, r1, rp


def _eta_coefficient(p, r1, rp, n):
    if n == 1:
        return -r1
    spec = PrimeLevelSpec(p, Fraction(r1), Fraction(rp))
    return eta_quotient_series(spec.eta_spec(), n).coeffs[n]


def _tail(k, p, n, a_abs, c_max) -> float:
    kf = float(k)
    return (
        (2 * math.pi) ** kf
        * float(n) ** (kf - 1)
        / a_abs
        * float(p) ** (1 - kf)
        * c_max ** (2.0 - kf)
        / (kf - 2.0)
    )


def gamma_series(req: GammaRequest) -> ComplexApprox:
    """Truncated exponential-sum value of Gamma(k).

    The returned err is the crude truncation tail (plus per-term rounding);
    with extrapolate=True the value is the Richardson estimate under the
    partial-sum model S + alpha C^(2-k), while err still reports the raw
    crude tail (extrapolation is excluded from the guaranteed bound).
    """
    k0, mult, route = gamma_reduce(req.k, req.route)
    p, r1, rp = _route_params(k0, route)
    n = req.n_choice
    exact = not isinstance(k0, float)
    if exact:
        a_n = _eta_coefficient(p, r1, rp, n)
        if a_n == 0:
            raise ValueError(f"A_{p}({n}) = 0; pick a different n")
        spec = PrimeLevelSpec(p, r1, rp)
        rows = infty_inner_sums(spec, [n], req.c_max, req.precision)
        a_f = float(a_n)
    else:
        if n != 1:
            raise ValueError("real (non-rational) k supports n_choice = 1 only")
        if p * req.c_max > _kernels.DEDEKIND_K_MAX:
            raise ValueError("c_max too large for the real-exponent engine")
        a_f = -r1
        _kernels.apply_threads(None)
        rows = np.zeros((req.c_max, 1), np.complex128)
        _kernels.exp_sums_infty_real(
            p, req.c_max, np.asarray([n], np.int64), float(r1), float(rp), rows
        )
    kf = float(k0)
    scale = (2 * math.pi) ** kf * float(n) ** (kf - 1) / a_f

    def partial(limit: int) -> complex:
        if req.precision <= 53:
            re = math.fsum(
                (p * c) ** -kf * complex(rows[c - 1][0]).real for c in range(1, limit + 1)
            )
            im = math.fsum(
                (p * c) ** -kf * complex(rows[c - 1][0]).imag for c in range(1, limit + 1)
            )
            return complex(re, im)
        import mpmath

        with mpmath.workprec(req.precision + 10):
            kq = Fraction(k0)
            kmp = mpmath.mpf(kq.numerator) / kq.denominator
            re = im = mpmath.mpf(0)
            for c in range(1, limit + 1):
                w = mpmath.mpf(p * c) ** -kmp
                re += rows[c - 1][0].re * w
                im += rows[c - 1][0].im * w
            return complex(re, im)

    full = scale * partial(req.c_max)
    tail = _tail(k0, p, n, abs(a_f), req.c_max)
    value = full
    if req.extrapolate:
        half = scale * partial(req.c_max // 2)
        beta = 2.0 ** (kf - 2.0)
        value = (beta * full - half) / (beta - 1.0)
    multf = float(mult)
    return ComplexApprox(
        multf * value.real, multf * value.imag, abs(multf) * (tail + 2.0**-40)
    )


def gamma_series_tail(req: GammaRequest) -> float:
    """The crude truncation bound of gamma_series, after reduction."""
    k0, mult, route = gamma_reduce(req.k, req.route)
    p, r1, rp = _route_params(k0, route)
    a_n = -float(r1) if req.n_choice == 1 else float(
        _eta_coefficient(p, r1, rp, req.n_choice)
    )
    return abs(float(mult)) * _tail(k0, p, req.n_choice, abs(a_n), req.c_max)
