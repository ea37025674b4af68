import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import derive_oracles
from ellbundles.acceptance import SPECTRAL_ORACLE
from ellbundles.ecurve import RRMonomial, rr_basis
from ellbundles.fields import GF, QQ
from ellbundles.poly import Poly
from ellbundles.spectral import (
    INCONCLUSIVE,
    VERIFIED,
    DegenerateSection,
    SpectralSection,
    WeierstrassFamily,
    _xpoly_mul,
    base_dimension,
    branch_divisor,
    connectedness_probe,
    eliminate_fiber_coordinate,
    family_discriminant,
    hyperelliptic_genus,
    moduli_dimension,
    prym_dimension_sl,
    random_instance,
    specialization_coherence,
    spectral_genus,
    spectral_report,
)

ONE, X, Y = RRMonomial(0, 0), RRMonomial(1, 0), RRMonomial(0, 1)


def P(*cs):
    return Poly(QQ, cs)


def to_sympy(f, var):
    return sp.Poly([sp.Rational(c) for c in reversed(f.coeffs)], var)


# ---- family


def test_constant_family_has_no_singular_fibres():
    fam = WeierstrassFamily(2, P(0), P(1))
    assert family_discriminant(fam).degree == 0


def test_generic_discriminant_degree():
    fam, _ = random_instance(2, 1, 0)
    assert family_discriminant(fam).degree == 12


def test_discriminant_specialises():
    fam, _ = random_instance(3, 1, 5)
    for s0 in (0, 1, -2, 7):
        if family_discriminant(fam)(s0) != 0:
            assert family_discriminant(fam)(s0) == fam.fiber(s0).discriminant


def test_family_validation():
    with pytest.raises(ValueError):
        WeierstrassFamily(1, P(0, 0, 0, 0, 0, 1), P(1))
    with pytest.raises(DegenerateSection):
        WeierstrassFamily(1, P(-3), P(2))  # every fibre is the nodal cubic
    with pytest.raises(ValueError):
        WeierstrassFamily(0, P(1), P(1))


# ---- section


def test_section_validation():
    with pytest.raises(ValueError, match="normalised"):
        SpectralSection(2, 1, {ONE: P(2), X: P(1, 1)})
    with pytest.raises(ValueError, match="exceeds"):
        SpectralSection(2, 1, {ONE: P(1), X: P(1, 1, 1, 1)})
    with pytest.raises(DegenerateSection, match="share a root"):
        SpectralSection(3, 1, {ONE: P(1), X: P(-1, 1), Y: P(-1, 0, 1)})
    with pytest.raises(DegenerateSection, match="infinity"):
        SpectralSection(3, 1, {ONE: P(1), X: P(2), Y: P(0, 1)})


def test_n3_eliminant_leading_coefficient():
    fam, sec = random_instance(3, 1, 2)
    R = eliminate_fiber_coordinate(sec, fam)
    assert len(R) == 4
    ay = sec.coefficients[Y]
    assert R[3] == -(ay * ay)


# ---- branch divisor against the sympy oracle


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (3, 1)])
def test_branch_polynomial_matches_oracle(n, k):
    fam, sec = random_instance(n, k, 0)
    b2, b3, coeffs = derive_oracles.random_instance(n, k, random.Random(0))
    want = derive_oracles.branch_poly(n, b2, b3, coeffs, derive_oracles.s)
    got = branch_divisor(sec, fam)
    assert to_sympy(got.affine, derive_oracles.s).monic() == want.monic()
    assert got.charts_agree


@pytest.mark.parametrize("n,k,branch,genus", [(2, 1, 14, 6), (2, 2, 28, 13), (3, 1, 30, 13), (3, 2, 60, 28)])
def test_oracle_table(n, k, branch, genus):
    fam, sec = random_instance(n, k, 0)
    rep = spectral_report(sec, fam)
    assert (rep.branch_degree, rep.genus) == (branch, genus)
    assert rep.branch_squarefree and rep.charts_agree
    assert 2 * rep.genus - 2 == -2 * n + rep.branch_degree


@pytest.mark.parametrize("nk", sorted(SPECTRAL_ORACLE))
def test_frozen_report_values(nk):
    fam, sec = random_instance(*nk, 0)
    rep = spectral_report(sec, fam).to_json()
    assert {key: rep[key] for key in SPECTRAL_ORACLE[nk]} == SPECTRAL_ORACLE[nk]


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10_000))
def test_n2_two_genus_routes_agree(seed):
    fam, sec = random_instance(2, 1, seed)
    rep = spectral_report(sec, fam, seed=seed)
    if rep.branch_squarefree:
        assert rep.hyperelliptic_genus == rep.genus == (rep.branch_degree - 2) // 2


def test_n4_infinity_fibre_is_not_simply_branched():
    fam, sec = random_instance(4, 1, 0)
    br = branch_divisor(sec, fam)
    assert br.charts_agree and br.at_infinity >= 2 and not br.squarefree
    rep = spectral_report(sec, fam)
    assert rep.genus is None and rep.total_moduli_dim is None


def test_branch_sees_infinity():
    # a_x of degree < 2k: the fibre point runs into the zero section at s = infinity
    fam, _ = random_instance(2, 1, 0)
    sec = SpectralSection(2, 1, {ONE: P(1), X: P(3, 1)})
    br = branch_divisor(sec, fam)
    assert br.at_infinity >= 1
    assert br.degree == br.affine.degree + br.at_infinity


def test_isotrivial_rejected():
    fam = WeierstrassFamily(1, P(1), P(2))
    sec = SpectralSection(2, 1, {ONE: P(1), X: P(3)})
    with pytest.raises(DegenerateSection, match="constant"):
        branch_divisor(sec, fam)


# ---- genus, prym, dimensions


def test_genus_formula():
    assert spectral_genus(2, 14, True) == 6
    assert spectral_genus(2, 2, True) == 0
    with pytest.raises(ValueError):
        spectral_genus(3, 30, False)


def test_hyperelliptic_genus():
    s = P(0, 1)
    h = (s - 1) * (s - 2) * (s - 3) * (s - 4)
    assert hyperelliptic_genus(h) == 1
    assert hyperelliptic_genus(h * (s - 5)) == 2
    with pytest.raises(ValueError):
        hyperelliptic_genus(h * (s - 1))


def test_prym():
    assert prym_dimension_sl(0) == 0
    assert prym_dimension_sl(5) == 5
    with pytest.raises(NotImplementedError):
        prym_dimension_sl(5, series="B")


@pytest.mark.parametrize("n,k,base", [(2, 1, 3), (2, 0, 1), (3, 1, 7), (4, 1, 12)])
def test_base_dimension(n, k, base):
    assert base_dimension(n, k) == base == (n - 1) + k * (n * (n + 1) // 2 - 1)


@given(st.integers(2, 6), st.integers(0, 5))
def test_base_dimension_additive_in_k(n, k):
    assert base_dimension(n, k + 1) - base_dimension(n, k) == n * (n + 1) // 2 - 1
    base, total = moduli_dimension(n, k, 4)
    assert total == base + 4


# ---- probe


def test_probe_generic_n2_and_n3():
    for n in (2, 3):
        fam, sec = random_instance(n, 1, 0)
        rep = spectral_report(sec, fam)
        assert rep.connectedness_verdict == VERIFIED
    assert rep.galois_group == "S3"


def test_probe_negative_controls():
    s = P(0, 1)
    G = [s * s + 1, s, P(1)]
    sq = connectedness_probe(_xpoly_mul(G, G))
    assert sq.verdict == INCONCLUSIVE and sq.witness is not None and len(sq.witness) >= 2
    split = connectedness_probe(_xpoly_mul(G, [s, P(1)]))
    assert split.verdict == INCONCLUSIVE and split.note is None


def test_probe_n2_perfect_square_branch():
    # w^2 = g(s)^2 splits
    g = P(1, 2, 3)
    res = connectedness_probe([-(g * g), P(0), P(1)])
    assert res.verdict == INCONCLUSIVE and res.witness == (1, 1)


# ---- coherence with the quotient map


@pytest.mark.parametrize("n", [2, 3])
def test_specialization_coherence(n):
    fam, sec = random_instance(n, 1, 0)
    out = specialization_coherence(sec, fam, p=1009, count=20)
    assert out["ok"] and out["checked"] == 20


def test_report_over_finite_field():
    fam, sec = random_instance(3, 1, 0, field=GF(10007))
    rep = spectral_report(sec, fam)
    assert rep.branch_degree == 30 and rep.genus == 13
