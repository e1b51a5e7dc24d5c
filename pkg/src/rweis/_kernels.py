"""Numba inner loops for the Eisenstein exponential sums.

Every term's exponent is an exact integer t modulo M: at the cusp at
infinity M = 24*V*p*c, at the cusp 1 M = 24*V*m_inf*A*c, where V is the
common denominator of (r1, rp) and 12*k*s(h,k) is an integer.  Phases stay
exact until the single cos/sin rounding per term.  Summation is Kahan
compensated, ascending d within each c; each c writes its own output slot,
so results are bit-identical for any thread count.

The int64 Dedekind chain needs 12*k^4 < 2^63, i.e. moduli up to ~29000;
wrappers check the bounds and callers fall back to the exact Python path
beyond them.
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np
from numba import config as _nb_config
from numba import njit, prange, set_num_threads

# stale-TBB advisory from the runtime environment; the workqueue/omp layers
# behave identically for these kernels
warnings.filterwarnings("ignore", message="The TBB threading layer requires")

TWO_PI = 2.0 * math.pi
DEDEKIND_K_MAX = 29000  # 12*k^4 < 2^63


def max_threads() -> int:
    return _nb_config.NUMBA_NUM_THREADS


def thread_count(requested=None) -> int:
    """Resolve the worker count: RWEIS_THREADS overrides, then the explicit
    argument, then all cores."""
    env = os.environ.get("RWEIS_THREADS", "").strip()
    if env:
        requested = int(env)
    if requested is None or requested <= 0:
        requested = max_threads()
    return max(1, min(int(requested), max_threads()))


def apply_threads(requested=None) -> int:
    n = thread_count(requested)
    set_num_threads(n)
    return n


@njit(cache=True)
def _gcd64(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _modinv64(d, m):
    if m == 1:
        return 0
    t, newt = 0, 1
    r, newr = m, d % m
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    return t % m


@njit(cache=True)
def _dedekind12(h, k):
    """12*k*s(h, k) as an exact int64 (k <= DEDEKIND_K_MAX)."""
    k0 = k
    h = h % k
    if h == 0:
        return 0
    g = _gcd64(h, k)
    h //= g
    k //= g
    hs = np.empty(64, np.int64)
    ks = np.empty(64, np.int64)
    m = 0
    while h > 0:
        hs[m] = h
        ks[m] = k
        m += 1
        h, k = k % h, h
    num = 0
    den = 1
    for i in range(m - 1, -1, -1):
        hh = hs[i]
        kk = ks[i]
        tn = hh * hh + kk * kk + 1 - 3 * hh * kk
        td = 12 * hh * kk
        num, den = tn * den - num * td, td * den
        g2 = _gcd64(num if num >= 0 else -num, den)
        num //= g2
        den //= g2
    return num * ((12 * k0) // den)


@njit(parallel=True, cache=True)
def exp_sums_infty_exact(p, c_max, n_vals, n_inf, R1, Rp, V, out):
    """Inner sums of the cusp-infinity expansion for c = 1..c_max.

    out[c-1, j] = sum over 0 <= d < pc coprime to pc of
    e((-n_inf*a + (n_j - n_inf)*d)/(pc) - (r1 s(-d,pc) + rp s(-d,c))/2)
    with a = d^-1 mod pc, r1 = R1/V, rp = Rp/V.
    """
    nn = n_vals.shape[0]
    for ci in prange(c_max):
        c = ci + 1
        pc = p * c
        M = 24 * V * pc
        sre = np.zeros(nn)
        sim = np.zeros(nn)
        cre = np.zeros(nn)
        cim = np.zeros(nn)
        for d in range(pc):
            if _gcd64(d, pc) != 1:
                continue
            a = _modinv64(d, pc)
            D1 = _dedekind12(d, pc)
            D2 = _dedekind12(d % c, c)
            base = (24 * V * (-n_inf * (a + d)) + R1 * D1 + p * Rp * D2) % M
            step = (24 * V * d) % M
            for j in range(nn):
                t = (base + step * n_vals[j]) % M
                ang = TWO_PI * (t / M)
                y = np.cos(ang) - cre[j]
                s = sre[j] + y
                cre[j] = (s - sre[j]) - y
                sre[j] = s
                y = np.sin(ang) - cim[j]
                s = sim[j] + y
                cim[j] = (s - sim[j]) - y
                sim[j] = s
        for j in range(nn):
            out[ci, j] = complex(sre[j], sim[j])


@njit(parallel=True, cache=True)
def exp_sums_infty_real(p, c_max, n_vals, r1, rp, out):
    """Cusp-infinity inner sums for real exponents with r1 + p*rp = 0.

    Dedekind sums stay exact integers; the phase is assembled in binary64.
    Only used for the real-weight Gamma series (n_inf = 0).
    """
    nn = n_vals.shape[0]
    for ci in prange(c_max):
        c = ci + 1
        pc = p * c
        sre = np.zeros(nn)
        sim = np.zeros(nn)
        cre = np.zeros(nn)
        cim = np.zeros(nn)
        for d in range(pc):
            if _gcd64(d, pc) != 1:
                continue
            D1 = _dedekind12(d, pc)
            D2 = _dedekind12(d % c, c)
            dedekind_part = (r1 * D1 + p * rp * D2) / (24.0 * pc)
            for j in range(nn):
                x = (n_vals[j] * d) / pc + dedekind_part
                ang = TWO_PI * (x % 1.0)
                y = np.cos(ang) - cre[j]
                s = sre[j] + y
                cre[j] = (s - sre[j]) - y
                sre[j] = s
                y = np.sin(ang) - cim[j]
                s = sim[j] + y
                cim[j] = (s - sim[j]) - y
                sim[j] = s
        for j in range(nn):
            out[ci, j] = complex(sre[j], sim[j])


@njit(parallel=True, cache=True)
def exp_sums_one_exact(p, c_max, n_vals, W, m_inf, R1, Rp, V, out):
    """Inner sums of the cusp-1 expansion for c = 1..c_max, gcd(c, p) = 1.

    out[c-1, j] = sum over 0 <= d < c*m_inf, gcd(c,d)=1, of
    e(d n_j/(c m_inf) - n_inf (a+b+d)/A - (r1 s(-b-d,A) + rp s(-b-d,A/p))/2)
    with the completion a = d^-1 mod c, a = -c mod p, A = a+c, b = (ad-1)/c;
    n_inf = W/m_inf.  Rows with p | c stay zero.
    """
    nn = n_vals.shape[0]
    for ci in prange(c_max):
        c = ci + 1
        if c % p == 0:
            continue
        invc = _modinv64(c % p, p)
        cm = c * m_inf
        sre = np.zeros(nn)
        sim = np.zeros(nn)
        cre = np.zeros(nn)
        cim = np.zeros(nn)
        for d in range(cm):
            if _gcd64(d, c) != 1:
                continue
            ic = _modinv64(d % c, c)
            kk = (((-c - ic) % p) * invc) % p
            a = ic + c * kk
            A = a + c
            b = (a * d - 1) // c
            Ap = A // p
            D1 = _dedekind12((b + d) % A, A)
            D2 = _dedekind12((b + d) % Ap, Ap)
            M = 24 * V * m_inf * A * c
            base = (-24 * V * c * W * (a + b + d) + m_inf * c * (R1 * D1 + p * Rp * D2)) % M
            step = (24 * V * A * d) % M
            for j in range(nn):
                t = (base + step * n_vals[j]) % M
                ang = TWO_PI * (t / M)
                y = np.cos(ang) - cre[j]
                s = sre[j] + y
                cre[j] = (s - sre[j]) - y
                sre[j] = s
                y = np.sin(ang) - cim[j]
                s = sim[j] + y
                cim[j] = (s - sim[j]) - y
                sim[j] = s
        for j in range(nn):
            out[ci, j] = complex(sre[j], sim[j])


def infty_bounds_ok(p, c_max, n_max, n_inf, R1, Rp, V) -> bool:
    """Whether the exact cusp-infinity kernel stays inside int64."""
    pc = p * c_max
    if pc > DEDEKIND_K_MAX:
        return False
    M = 24 * V * pc
    worst = (
        24 * V * (abs(n_inf) * 2 * pc)
        + abs(R1) * pc * pc
        + p * abs(Rp) * c_max * c_max
        + M * (abs(n_max) + 1)
    )
    return worst < 2**62


def one_bounds_ok(p, c_max, n_max, W, m_inf, R1, Rp, V) -> bool:
    """Whether the exact cusp-1 kernel stays inside int64."""
    A = p * c_max + c_max  # a < pc so A = a + c <= pc + c
    if A > DEDEKIND_K_MAX:
        return False
    M = 24 * V * m_inf * A * c_max
    # a <= pc, b = (ad-1)/c <= pc*m_inf, d < c*m_inf
    abd = A + A * m_inf + c_max * m_inf
    worst = 24 * V * c_max * abs(W) * abd + m_inf * c_max * (
        abs(R1) * A * A + p * abs(Rp) * A * A
    ) + M * (abs(n_max) + 1)
    return worst < 2**62


def warmup():
    """Trigger JIT compilation of all kernels with tiny inputs."""
    out = np.zeros((2, 1), np.complex128)
    exp_sums_infty_exact(2, 2, np.array([1], np.int64), 0, 8, 8, 1, out)
    exp_sums_infty_real(2, 2, np.array([1], np.int64), 10.0, -5.0, out)
    exp_sums_one_exact(2, 2, np.array([1], np.int64), 1, 1, -8, 16, 1, out)
