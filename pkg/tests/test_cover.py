import random
from fractions import Fraction

import pytest

from rweis.arith import Phase
from rweis.cover import CoverElement, branch_index, compose, identity, invert, lift, word

from helpers import random_gamma0

T = (1, 1, 0, 1)
S = (0, -1, 1, 0)
NEG_I = (-1, 0, 0, -1)


def test_lift_examples():
    g = lift(*T, 18)
    assert g.matrix == T and g.eps == Phase(0)
    g = lift(*S, 4)
    assert g.matrix == S and g.eps == Phase(0)
    g = lift(7, -2, 11, -3, 18)
    assert g.eps == Phase(0)


def test_lift_rejects_non_unimodular():
    with pytest.raises(ValueError):
        lift(1, 0, 0, 2, 4)
    with pytest.raises(ValueError):
        CoverElement(1, 0, 0, 1, 3)  # odd cover order
    with pytest.raises(ValueError):
        CoverElement(1, 0, 0, 1, 4, Phase(Fraction(1, 3)))


def test_neg_identity_squared():
    # lift(-I)^2 = (I, e(1/D2)): the principal-branch defect of (-1)^(1/D2)
    # squared against 1; in a cover of order D2 the defect is e(1/D2)
    for D2 in (2, 4, 6, 18):
        g = compose(lift(*NEG_I, D2), lift(*NEG_I, D2))
        assert g.matrix == (1, 0, 0, 1)
        assert g.eps == Phase(Fraction(1, D2)), D2


def test_T_squared_trivial():
    g = compose(lift(*T, 18), lift(*T, 18))
    assert g.matrix == (1, 2, 0, 1)
    assert g.eps == Phase(0)


def test_S_squared():
    g = compose(lift(*S, 4), lift(*S, 4))
    assert g.matrix == (-1, 0, 0, -1)
    assert g.eps == Phase(0)


def test_mismatched_orders_rejected():
    with pytest.raises(ValueError):
        compose(lift(*T, 4), lift(*T, 6))


def test_invert_roundtrips():
    for mat in (T, S, NEG_I, (7, -2, 11, -3)):
        for D2 in (2, 6, 18):
            g = lift(*mat, D2)
            assert compose(g, invert(g)).is_identity()
            assert compose(invert(g), g).is_identity()
    # an element with nontrivial eps
    g = CoverElement(2, 1, 11, 6, 18, Phase(Fraction(5, 18)))
    assert compose(g, invert(g)).is_identity()


def test_associativity_exact():
    rng = random.Random(3)
    for _ in range(200):
        D2 = rng.choice((2, 4, 18))
        gs = []
        for _ in range(3):
            mat = random_gamma0(rng, 1, bound=40)
            eps = Phase(Fraction(rng.randrange(D2), D2))
            gs.append(CoverElement(*mat, D2, eps))
        g1, g2, g3 = gs
        left = compose(compose(g1, g2), g3)
        right = compose(g1, compose(g2, g3))
        assert left.matrix == right.matrix
        assert left.eps == right.eps


def test_delta_residual_random():
    # 10^4 random compositions with entries <= 10^3: residual under DELTA_TOL
    # (branch_index raises if not)
    rng = random.Random(17)
    for _ in range(10**4):
        g1 = lift(*random_gamma0(rng, 1, bound=1000), 18)
        g2 = lift(*random_gamma0(rng, 1, bound=1000), 18)
        compose(g1, g2)


def test_delta_sample_point_independence():
    # open question probe: the cocycle evaluated at tau=i and tau=1+2i agrees
    rng = random.Random(23)
    for _ in range(2000):
        g1 = lift(*random_gamma0(rng, 1, bound=200), 18)
        g2 = lift(*random_gamma0(rng, 1, bound=200), 18)
        assert branch_index(g1, g2) == branch_index(g1, g2, tau=1 + 2j)


def test_gamma0_11_generator_words():
    # T S^-1 T^3 S^-1 T^4 S = ((7,-2;11,-3), e(-1/18)) in the 18-fold cover,
    # and T S^-1 T^4 S^-1 T^3 S = ((8,-3;11,-4), e(-1/18)).
    w1 = word([(T, 1), (S, -1), (T, 3), (S, -1), (T, 4), (S, 1)], 18)
    assert w1.matrix == (7, -2, 11, -3)
    assert w1.eps == Phase(Fraction(-1, 18))
    w2 = word([(T, 1), (S, -1), (T, 4), (S, -1), (T, 3), (S, 1)], 18)
    assert w2.matrix == (8, -3, 11, -4)
    assert w2.eps == Phase(Fraction(-1, 18))
