import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from rweis.arith import Phase
from rweis.eisenstein import (
    EisensteinParams,
    classical_coeff,
    coeff_infty,
    coeff_one,
    coeff_term_direct,
    coeff_term_kloosterman,
    complete_matrix_cusp1,
    exp_sum_infty,
    exp_sum_one,
    infty_inner_sums,
    kloosterman,
    phases_one,
    qexpansion,
)
from rweis.multiplier import PrimeLevelSpec

from helpers import mobius, totient


CARLITZ = PrimeLevelSpec(3, 9, -3)
CLASSICAL2 = PrimeLevelSpec(2, 8, 8)


def test_params_validation():
    with pytest.raises(ValueError):
        EisensteinParams(CARLITZ, 2, "infty")  # k must exceed 2
    with pytest.raises(ValueError):
        EisensteinParams(CARLITZ, 4, "infty")  # parity: k' = 3, k-k' odd
    with pytest.raises(ValueError):
        EisensteinParams(CARLITZ, 3, "nowhere")
    with pytest.raises(ValueError):
        # (p, r1, rp) = (3, 4, 0): n_one = 1/2, not integral
        EisensteinParams(PrimeLevelSpec(3, 4, 0), Fraction(4), "one")
    with pytest.raises(ValueError):
        # n_inf = 1/2 for (3, 12, 0): cusp infty must reject
        EisensteinParams(PrimeLevelSpec(3, 0, 4), Fraction(2) + 2, "infty")
    p = EisensteinParams(CARLITZ, 3, "infty", 100)
    assert p.sign == 1
    assert EisensteinParams(CLASSICAL2, 4, "infty", 50).sign == 1
    assert EisensteinParams(CLASSICAL2, 6, "infty", 50).sign == -1


def test_exp_sum_trivial_character_is_ramanujan():
    # (p=2, r1=r2=8) has trivial multiplier, so the inner sum collapses to
    # the Ramanujan sum sum_{d<2c, gcd(2c,d)=1} e(nd/(2c)).
    for c in (1, 2, 3, 5, 8):
        for n in (1, 2, 7):
            got = exp_sum_infty(CLASSICAL2, n, c).as_complex()
            want = sum(
                cmath.exp(2j * math.pi * n * d / (2 * c))
                for d in range(2 * c)
                if math.gcd(d, 2 * c) == 1
            )
            assert abs(got - want) < 1e-11, (c, n)


def test_exp_sum_requires_integral_n_inf():
    with pytest.raises(ValueError):
        exp_sum_infty(PrimeLevelSpec(3, 1, 1), 1, 1)


def test_coeff_infty_constant_term_exact():
    params = EisensteinParams(CARLITZ, 3, "infty", 10)
    r = coeff_infty(params, 0)
    assert r.value.re == 1.0 and r.value.im == 0.0
    assert r.value.err == 0.0 and r.tail_bound == 0.0


def test_coeff_infty_carlitz_q1():
    params = EisensteinParams(CARLITZ, 3, "infty", 400)
    r = coeff_infty(params, 1)
    assert abs(r.value.as_complex() - (-9)) <= r.tail_bound * 1.01 + 1e-9
    assert abs(r.value.as_complex() - (-9)) < 5e-3


def test_coeff_infty_classical_q1():
    params = EisensteinParams(CLASSICAL2, 4, "infty", 400)
    r = coeff_infty(params, 1)
    want = float(classical_coeff(2, 4, 1))
    assert want == -16.0
    assert abs(r.value.as_complex() - want) <= r.tail_bound * 1.01 + 1e-9


def test_complete_matrix_cusp1_examples():
    assert complete_matrix_cusp1(3, 1, 0) == (2, -1)
    a, b = complete_matrix_cusp1(3, 2, 1)
    assert (a, b) == (1, 0)
    rng = random.Random(3)
    for _ in range(200):
        p = rng.choice((2, 3, 5, 11))
        c = rng.randint(1, 50)
        if math.gcd(c, p) != 1:
            continue
        d = rng.randint(-50, 50)
        if math.gcd(c, d) != 1:
            continue
        for shift in (0, 1, 5):
            a, b = complete_matrix_cusp1(p, c, d, shift=shift)
            assert a * d - b * c == 1
            assert (a + c) % p == 0 and a + c > 0
    with pytest.raises(ValueError):
        complete_matrix_cusp1(3, 3, 1)  # gcd(c, p) != 1
    with pytest.raises(ValueError):
        complete_matrix_cusp1(3, 4, 2)  # gcd(c, d) != 1


def test_phases_one_completion_invariance():
    spec = PrimeLevelSpec(2, -8, 16)
    for c in (1, 3, 5):
        for n in (1, 2):
            base = phases_one(spec, n, c, shift=0)
            for shift in (1, 3):
                shifted = phases_one(spec, n, c, shift=shift)
                assert base == shifted, (c, n, shift)


def test_coeff_one_thm72_q1():
    # E^1_{4,2}(tau; -8, 16) = 2^8 eta^-8(tau) eta^16(2tau): first coefficient 256
    spec = PrimeLevelSpec(2, -8, 16)
    params = EisensteinParams(spec, 4, "one", 400)
    r = coeff_one(params, 1)
    assert r.n == 1
    assert abs(r.value.as_complex() - 256) <= r.tail_bound * 1.01 + 1e-9


def test_coeff_one_rejects_bad_n():
    spec = PrimeLevelSpec(2, -8, 16)
    params = EisensteinParams(spec, 4, "one", 50)
    with pytest.raises(ValueError):
        coeff_one(params, 0)
    with pytest.raises(ValueError):
        coeff_infty(params, 1)


def test_kloosterman_trivial_character_values():
    for c in range(1, 30):
        got = kloosterman(0, 0, 0, c)
        assert abs(got.as_complex() - totient(c)) < 1e-10, c
        got = kloosterman(0, 1, 0, c)
        assert abs(got.as_complex() - mobius(c)) < 1e-10, c


def test_kloosterman_character_sum():
    # with psi = (.|3)^(odd) the terms carry Legendre signs: check against a
    # direct evaluation for a few cases
    from rweis.arith import kronecker

    for c, m, n in ((3, 1, 2), (6, 2, 1), (9, 4, 5), (12, 1, 1)):
        want = 0j
        for r in range(c):
            if math.gcd(r, c) != 1:
                continue
            want += kronecker(r, 3) * cmath.exp(2j * math.pi * (m * r + n * pow(r, -1, c)) / c)
        got = kloosterman(-3, m, n, c).as_complex()
        assert abs(got - want) < 1e-11, (c, m, n)


def test_classical_coeff_values():
    assert classical_coeff(2, 4, 0) == 1
    assert classical_coeff(2, 4, 1) == -16
    # n=2: -(2k/B_k) (p^k s(1) - s(2))/(p^k-1) = 240*(16-9)/15 = 112
    assert classical_coeff(2, 4, 2) == 112
    with pytest.raises(ValueError):
        classical_coeff(2, 5, 1)
    with pytest.raises(ValueError):
        classical_coeff(2, 2, 1)


def test_kloosterman_form_equals_direct_per_c():
    for r3 in (0, -1, -2, -3):
        r1 = -3 * r3
        k = 4 if r3 % 2 == 0 else 3
        spec = PrimeLevelSpec(3, r1, r3)
        params = EisensteinParams(spec, k, "infty", 30)
        for c in (1, 2, 3, 7, 12):
            for n in (1, 3):
                direct = coeff_term_direct(params, n, c)
                kloos = coeff_term_kloosterman(r3, k, n, c)
                assert abs(direct - kloos) < 1e-12, (r3, c, n)


def test_qexpansion_matches_single_coeffs():
    params = EisensteinParams(CARLITZ, 3, "infty", 60)
    batch = qexpansion(params, 3)
    assert batch[0].value.re == 1.0
    for n in (1, 2, 3):
        single = coeff_infty(params, n)
        assert batch[n].value.re == single.value.re
        assert batch[n].value.im == single.value.im
    spec = PrimeLevelSpec(2, -8, 16)
    params = EisensteinParams(spec, 4, "one", 60)
    batch = qexpansion(params, 2)
    assert [r.n for r in batch] == [1, 2]
    single = coeff_one(params, 2)
    assert batch[1].value.re == single.value.re


def test_example_6_4_runs():
    spec = PrimeLevelSpec(11, Fraction(44, 9), Fraction(-4, 9))
    params = EisensteinParams(spec, Fraction(20, 9), "infty", 40)
    rows = qexpansion(params, 2)
    for r in rows:
        assert math.isfinite(r.value.re) and math.isfinite(r.value.im)
    assert rows[0].value.re == 1.0


def test_kernel_matches_python_exact_path():
    # kernel rows vs the exact Phase path, including rational exponents
    for spec, ns, c_max in (
        (CARLITZ, [1, 2], 12),
        (PrimeLevelSpec(11, Fraction(44, 9), Fraction(-4, 9)), [1], 8),
    ):
        rows = infty_inner_sums(spec, ns, c_max)
        for c in range(1, c_max + 1):
            for j, n in enumerate(ns):
                want = exp_sum_infty(spec, n, c).as_complex()
                assert abs(complex(rows[c - 1][j]) - want) < 1e-11, (spec.p, c, n)


def test_kernel_one_matches_python_exact_path():
    spec = PrimeLevelSpec(2, -8, 16)
    from rweis.eisenstein import one_inner_sums

    rows = one_inner_sums(spec, [1, 2], 12)
    for c in range(1, 13):
        for j, n in enumerate([1, 2]):
            want = exp_sum_one(spec, n, c).as_complex()
            assert abs(complex(rows[c - 1][j]) - want) < 1e-11, (c, n)
    # rational n_inf (m_inf > 1)
    spec = PrimeLevelSpec(2, -6, 12)  # n_inf = 3/4, n_one = 0
    rows = one_inner_sums(spec, [1, 3], 9)
    for c in range(1, 10):
        for j, n in enumerate([1, 3]):
            want = exp_sum_one(spec, n, c).as_complex()
            assert abs(complex(rows[c - 1][j]) - want) < 1e-11, (c, n)


def test_tail_bound_monotone_and_honest():
    p1 = EisensteinParams(CARLITZ, 3, "infty", 200)
    p2 = EisensteinParams(CARLITZ, 3, "infty", 400)
    r1 = coeff_infty(p1, 2)
    r2 = coeff_infty(p2, 2)
    assert r2.tail_bound < r1.tail_bound
    assert abs(r1.value.as_complex() - r2.value.as_complex()) < r1.tail_bound


def test_determinism_across_thread_counts():
    rows1 = infty_inner_sums(CARLITZ, [1, 2], 150, threads=1)
    rows2 = infty_inner_sums(CARLITZ, [1, 2], 150, threads=2)
    assert np.array_equal(np.asarray(rows1), np.asarray(rows2))


def test_high_precision_matches_double():
    lo = coeff_infty(EisensteinParams(CARLITZ, 3, "infty", 25), 1)
    hi = coeff_infty(EisensteinParams(CARLITZ, 3, "infty", 25, precision=90), 1)
    assert abs(float(hi.value.re) - lo.value.re) < 1e-12
    assert abs(float(hi.value.im) - lo.value.im) < 1e-12


def test_coeff_json_schema():
    params = EisensteinParams(CARLITZ, 3, "infty", 20)
    d = coeff_infty(params, 1).to_json_dict()
    assert set(d) == {"n", "re", "im", "tail_bound", "c_max"}
    assert d["n"] == "1" and d["c_max"] == 20
