import pytest
from hypothesis import given, strategies as st

from ellbundles import linalg
from ellbundles.rootsys import (
    CartanType,
    OrbitTooLarge,
    admissible_types,
    build_root_system,
    cartan_determinant,
    cartan_matrix,
    check_degree_identities,
    classical,
    coroot_system,
    highest_root,
    highest_short_root,
    invariant_degrees,
    reflect_weight,
    weight_lattice,
    weyl_orbit,
    wps_weights,
)

TYPES = admissible_types(8)
SMALL = [t for t in TYPES if t.rank <= 5]


def test_admissible_list():
    names = [str(t) for t in TYPES]
    assert len(names) == 33
    assert "D3" in names and "B1" not in names and "C1" not in names
    assert names[-3:] == ["E8", "F4", "G2"]


@pytest.mark.parametrize("bad", ["A0", "B1", "D2", "E5", "E9", "F3", "G3", "H3"])
def test_inadmissible_rejected(bad):
    with pytest.raises(ValueError):
        CartanType.parse(bad)


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_root_count_matches_table(t):
    rs = build_root_system(t)
    assert len(rs.roots) == classical("root_count", t)
    assert len(rs.positive_roots) * 2 == len(rs.roots)


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_degree_identities(t):
    assert all(check_degree_identities(t).values())


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_determinant_matches_table(t):
    assert cartan_determinant(build_root_system(t)) == classical("cartan_determinant", t)
    assert cartan_determinant(build_root_system(t)) == linalg.det(cartan_matrix(t))


def test_g2_conventions():
    # alpha_1 short, alpha_2 long; A[i][j] = <alpha_i^vee, alpha_j>
    assert cartan_matrix(CartanType("G", 2)) == [[2, -3], [-1, 2]]
    rs = build_root_system(CartanType("G", 2))
    assert rs.length_class(rs.simple_roots[0]) == "short"
    assert highest_root(rs) == (3, 2)
    assert highest_short_root(rs) == (2, 1)


def test_b_and_c_are_transposes():
    for r in range(2, 6):
        B = cartan_matrix(CartanType("B", r))
        C = cartan_matrix(CartanType("C", r))
        assert C == linalg.transpose(B)


def test_explicit_weights():
    assert wps_weights(CartanType("A", 3)) == [1, 1, 1, 1]
    assert sorted(wps_weights(CartanType("B", 3))) == [1, 1, 1, 2]
    assert wps_weights(CartanType("C", 4)) == [1] * 5
    assert invariant_degrees(CartanType("B", 3)) == [0, 2, 4, 6]
    assert wps_weights(CartanType("E", 8)) == [1, 2, 3, 4, 6, 5, 4, 3, 2]
    assert wps_weights(CartanType("G", 2)) == [1, 1, 2]  # theta^vee = a1^vee + 2 a2^vee
    assert invariant_degrees(CartanType("E", 6)) == [0, 2, 5, 6, 8, 9, 12]


@pytest.mark.parametrize("t", SMALL, ids=str)
def test_reflections_preserve_roots(t):
    rs = build_root_system(t)
    roots = set(rs.roots)
    for i in range(rs.rank):
        assert {rs.reflect(i, b) for b in roots} == roots


@pytest.mark.parametrize("t", SMALL, ids=str)
def test_weyl_orbit_of_highest_root_is_long_roots(t):
    rs = build_root_system(t)
    theta = rs.to_weight_coords(highest_root(rs))
    orbit = weyl_orbit(rs, theta)
    long_roots = [b for b in rs.roots if rs.length_class(b) == "long" or rs.length_classes == 1]
    assert len(orbit) == len(long_roots)


def test_orbit_guard():
    rs = build_root_system(CartanType("E", 8))
    with pytest.raises(OrbitTooLarge):
        weyl_orbit(rs, (1,) + (0,) * 7)


@given(st.sampled_from(SMALL), st.data())
def test_simple_reflection_is_involution(t, data):
    rs = build_root_system(t)
    lam = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=rs.rank, max_size=rs.rank)))
    i = data.draw(st.integers(0, rs.rank - 1))
    assert reflect_weight(rs, i, reflect_weight(rs, i, lam)) == lam


@given(st.sampled_from(SMALL), st.data())
def test_reflection_preserves_pairing(t, data):
    rs = build_root_system(t)
    a = data.draw(st.sampled_from(rs.roots))
    b = data.draw(st.sampled_from(rs.roots))
    i = data.draw(st.integers(0, rs.rank - 1))
    assert rs.pairing(rs.reflect(i, a), rs.reflect(i, b)) == rs.pairing(a, b)


def test_weight_lattice_generators_match_reflection():
    rs = build_root_system(CartanType("B", 3))
    wl = weight_lattice(rs)
    lam = (2, -1, 3)
    for j, g in enumerate(wl.weyl_generators):
        assert tuple(linalg.matvec(g, lam)) == reflect_weight(rs, j, lam)


def test_coroot_system_is_dual():
    assert len(coroot_system(CartanType("B", 4)).roots) == 32
    rsB = coroot_system(CartanType("B", 3))
    assert [list(r) for r in rsB.cartan_matrix] == cartan_matrix(CartanType("C", 3))
