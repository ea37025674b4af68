import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellbundles.ecurve import (
    ZERO,
    ECPoint,
    NotOnCurve,
    RRMonomial,
    WeierstrassCurve,
    parse_point,
    rational_curve,
    rr_basis,
)
from ellbundles.fields import GF, QQ

E1009 = WeierstrassCurve(GF(1009), 3, 7)
seeds = st.integers(0, 2**32)


def pts(seed, k):
    rng = random.Random(seed)
    return [E1009.random_point(rng) for _ in range(k)]


@given(seeds)
def test_identity_and_inverse(seed):
    (P,) = pts(seed, 1)
    assert E1009.add(P, ZERO) == P == E1009.add(ZERO, P)
    assert E1009.add(P, E1009.neg(P)) == ZERO


@given(seeds)
def test_commutative_and_associative(seed):
    P, Q, R = pts(seed, 3)
    assert E1009.add(P, Q) == E1009.add(Q, P)
    assert E1009.add(E1009.add(P, Q), R) == E1009.add(P, E1009.add(Q, R))


@given(seeds, st.integers(-30, 30), st.integers(-30, 30))
def test_scalar_mul_is_linear(seed, a, b):
    (P,) = pts(seed, 1)
    lhs = E1009.scalar_mul(a + b, P)
    assert lhs == E1009.add(E1009.scalar_mul(a, P), E1009.scalar_mul(b, P))


@pytest.mark.parametrize("b2,b3", [(1, 1), (0, 3), (5, 0), (-1, 0), (40, 77)])
def test_hasse_and_lagrange_f101(b2, b3):
    E = WeierstrassCurve(GF(101), b2, b3)
    points = E.enumerate_points()
    N = len(points)
    assert (N - 102) ** 2 <= 4 * 101
    assert all(E.scalar_mul(N, P) == ZERO for P in points)


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        WeierstrassCurve(QQ, -3, 2)


def test_two_torsion_and_split():
    E = rational_curve(-1, 0)
    assert E.has_split_cubic()
    assert len(E.two_torsion()) == 4
    assert not rational_curve(1, 1).has_split_cubic()


def test_rational_group_law_example():
    # y^2 = x^3 - 2 has P = (3, 5); 2P = (129/100, -383/1000)
    E = rational_curve(0, -2)
    P = E.point(3, 5)
    assert E.add(P, P) == ECPoint(Fraction(129, 100), Fraction(-383, 1000))


def test_point_validation_and_parsing():
    E = rational_curve(-1, 0)
    with pytest.raises(NotOnCurve):
        E.point(2, 3)
    assert parse_point(E, "O") == ZERO
    assert parse_point(E, " 1 , 0 ") == ECPoint(1, 0)


def test_enumeration_guard():
    with pytest.raises(ValueError):
        WeierstrassCurve(GF(10007), 1, 1).enumerate_points()
    with pytest.raises(ValueError):
        rational_curve(1, 1).enumerate_points()


def test_rr_basis():
    assert [str(m) for m in rr_basis(2)] == ["1", "x"]
    assert [str(m) for m in rr_basis(5)] == ["1", "x", "y", "x^2", "x*y"]
    assert [m.pole_order for m in rr_basis(6)] == [0, 2, 3, 4, 5, 6]
    assert RRMonomial(1, 1).evaluate(QQ, ECPoint(2, 3)) == 6


@given(st.integers(2, 12))
def test_rr_basis_dimension(n):
    # Riemann-Roch: dim L(n O) = n
    assert len(rr_basis(n)) == n
