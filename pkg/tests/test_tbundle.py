import random

import pytest
from hypothesis import given, strategies as st

from ellbundles.acceptance import G2_EXOTIC, G2_LEVI, g2_strata_curve
from ellbundles.ecurve import ZERO, WeierstrassCurve, rational_curve
from ellbundles.fields import GF, QQ
from ellbundles.rootsys import CartanType, build_root_system, weight_lattice
from ellbundles.tbundle import (
    ONE_PARAMETER_FAMILY,
    TBundlePoint,
    classify_subsystem,
    deformation_dims,
    evaluate,
    is_levi,
    kernel_roots,
    kernel_subsystem,
    scan_strata,
    sl2_ubar_fiber_count,
    weyl_act,
)

G2 = build_root_system(CartanType("G", 2))
E = g2_strata_curve()
E1009 = WeierstrassCurve(GF(1009), -1, 0)


def test_g2_strata_scan():
    found = scan_strata(E, G2, E.enumerate_points())
    for t in G2_LEVI:
        assert found[t]["is_levi"], t
    for t in G2_EXOTIC:
        assert not found[t]["is_levi"], t
    assert set(found) == set(G2_LEVI) | set(G2_EXOTIC)


def test_a2_long_from_three_torsion():
    P = E.point(4, 4)
    assert E.order(P) == 3
    rep = kernel_subsystem(TBundlePoint(E, (P, ZERO)), G2)
    assert rep.cartan_type == "A2^long" and not rep.is_levi
    assert rep.dim_g_prime == 2 + 6


def test_two_torsion_gives_a1_pair():
    T = E.point(0, 0)
    rep = kernel_subsystem(TBundlePoint(E, (T, ZERO)), G2)
    assert rep.cartan_type == "A1^long x A1^short" and not rep.is_levi


def test_all_zero_gives_everything():
    for t in (CartanType("G", 2), CartanType("B", 3), CartanType("A", 3)):
        rs = build_root_system(t)
        rep = kernel_subsystem(TBundlePoint(E, (ZERO,) * rs.rank), rs)
        assert rep.roots_in_kernel == frozenset(rs.roots)
        assert rep.cartan_type.split("^")[0] == str(t)
        assert rep.is_levi


def test_generic_point_has_trivial_kernel():
    rng = random.Random(1)
    p = TBundlePoint(E1009, (E1009.random_point(rng), E1009.random_point(rng)))
    assert kernel_roots(p, G2) == frozenset()
    assert deformation_dims(p, G2) == (2, 0)


def test_classify_known_subsystems():
    A3 = build_root_system(CartanType("A", 3))
    sub = {(1, 0, 0), (-1, 0, 0), (0, 0, 1), (0, 0, -1)}
    assert classify_subsystem(sub, A3)[0] == "A1 x A1"
    B2 = build_root_system(CartanType("B", 2))
    for cls in ("long", "short"):
        sub = {b for b in B2.roots if B2.length_class(b) == cls}
        assert classify_subsystem(sub, B2)[0] == f"A1^{cls} x A1^{cls}"
    assert classify_subsystem(set(), B2) == ("0", ())


def test_levi_criterion():
    # the long roots of B2 form A1 x A1 which is not Levi; a single root is
    rs = build_root_system(CartanType("B", 2))
    longs = {b for b in rs.roots if rs.length_class(b) == "long"}
    assert not is_levi(longs, rs)
    a = rs.simple_roots[0]
    assert is_levi({a, tuple(-v for v in a)}, rs)


@given(st.integers(0, 2**32))
def test_weyl_action_preserves_kernel_type(seed):
    rng = random.Random(seed)
    pts = E.enumerate_points()
    p = TBundlePoint(E, (rng.choice(pts), rng.choice(pts)))
    wl = weight_lattice(G2)
    w = wl.weyl_generators[rng.randrange(2)]
    q = weyl_act(w, p)
    assert kernel_subsystem(q, G2).cartan_type == kernel_subsystem(p, G2).cartan_type


def test_weyl_action_is_an_action():
    rng = random.Random(4)
    p = TBundlePoint(E1009, (E1009.random_point(rng), E1009.random_point(rng)))
    wl = weight_lattice(G2)
    s = wl.weyl_generators[0]
    assert weyl_act(s, weyl_act(s, p)) == p


def test_evaluate_linear():
    rng = random.Random(2)
    p = TBundlePoint(E1009, (E1009.random_point(rng), E1009.random_point(rng)))
    a, b = (2, -1), (1, 3)
    lhs = evaluate(p, (3, 2))
    assert lhs == E1009.add(evaluate(p, a), evaluate(p, b))


def test_sl2_universal_fibres():
    assert sl2_ubar_fiber_count(rational_curve(-1, 0), True) == 4
    assert sl2_ubar_fiber_count(rational_curve(-1, 0), False) == ONE_PARAMETER_FAMILY
    assert sl2_ubar_fiber_count(WeierstrassCurve(GF(13), -1, 0), True) == 4
    with pytest.raises(ValueError):
        sl2_ubar_fiber_count(rational_curve(1, 1), True)


def test_rank_mismatch():
    with pytest.raises(ValueError):
        kernel_subsystem(TBundlePoint(E, (ZERO,)), G2)
