"""SL(n) spectral covers of a Weierstrass family over P^1.

A family is y^2 = x^3 + b2(s) x + b3(s) with deg b2 <= 4k, deg b3 <= 6k.  A
section of the moduli bundle assigns to each monomial m of ``rr_basis(n)``
(pole order p) a coefficient a_m(s) of degree <= p*k, normalised by a_1 = 1.
The spectral cover is the curve {sum_m a_m(s) m = 0} mapping n:1 to the base.

Branch divisors are computed in both affine charts of P^1.  With
f = A(x) + B(x) y the x-eliminant is R = A^2 - B^2 (x^3 + b2 x + b3); its
x-discriminant also vanishes where two spectral points are opposite
(P, -P), which happens exactly where A and B share a root, each such point
contributing Res_x(A, B)^2.  The branch polynomial of a chart is therefore
disc_x(R) / Res_x(A, B)^2.  For n = 2 (B = 0) the cover is w^2 = a_x N with
N = -(c^3 + b2 c a_x^2 - b3 a_x^3), c the constant coefficient.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .ecurve import ECPoint, RRMonomial, WeierstrassCurve, rr_basis
from .fields import QQ, Field, is_prime
from .modquot import ProjectivePoint, abel_jacobi_sl
from .poly import (
    Poly,
    form_discriminant_interp,
    form_resultant,
    is_squarefree_by_resultant,
    poly_gcd,
)

DISCRIMINANT_CONVENTION = "Delta(s) = 4*b2(s)^3 + 27*b3(s)^2"
VERIFIED = "verified-irreducible-probe"
INCONCLUSIVE = "inconclusive"
PROBE_PRIMES = (10007, 10009, 100003)


class DegenerateSection(ValueError):
    """The section violates a genericity condition; the message names it."""


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class WeierstrassFamily:
    k: int
    b2: Poly
    b3: Poly

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.b2.field != self.b3.field:
            raise ValueError("b2 and b3 live over different fields")
        if self.b2.degree > 4 * self.k or self.b3.degree > 6 * self.k:
            raise ValueError(f"need deg b2 <= {4 * self.k} and deg b3 <= {6 * self.k}")
        if self.discriminant().is_zero():
            raise DegenerateSection("family discriminant vanishes identically")

    @property
    def field(self) -> Field:
        return self.b2.field

    def discriminant(self) -> Poly:
        return self.b2**3 * 4 + self.b3**2 * 27

    def fiber(self, s0) -> WeierstrassCurve:
        return WeierstrassCurve(self.field, self.b2(s0), self.b3(s0))

    def infinity_chart(self) -> tuple[Poly, Poly]:
        return self.b2.reversed(4 * self.k), self.b3.reversed(6 * self.k)

    def reduce(self, p: int) -> "WeierstrassFamily":
        F = Field(p)
        return WeierstrassFamily(self.k, Poly(F, self.b2.coeffs), Poly(F, self.b3.coeffs))

    def to_json(self) -> dict:
        F = self.field
        return {
            "k": self.k,
            "field": F.token,
            "b2": [F.to_json(c) for c in self.b2.coeffs],
            "b3": [F.to_json(c) for c in self.b3.coeffs],
        }


def family_discriminant(f: WeierstrassFamily) -> Poly:
    return f.discriminant()


@dataclass(frozen=True)
class SpectralSection:
    n: int
    k: int
    coefficients: Mapping[RRMonomial, Poly]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        basis = rr_basis(self.n)
        coeffs = dict(self.coefficients)
        if set(coeffs) != set(basis):
            raise ValueError(f"coefficients must be given for exactly {[str(m) for m in basis]}")
        for m, a in coeffs.items():
            if a.degree > m.pole_order * self.k:
                raise ValueError(f"deg a_{m} = {a.degree} exceeds {m.pole_order * self.k}")
        if coeffs[RRMonomial(0, 0)] != 1:
            raise ValueError("the constant coefficient must be normalised to 1")
        object.__setattr__(self, "coefficients", coeffs)
        if self.n >= 3:
            top, sub = basis[-1], basis[-2]
            a, b = coeffs[top], coeffs[sub]
            if a.is_zero() or b.is_zero() or poly_gcd(a, b).degree > 0:
                raise DegenerateSection(
                    f"top coefficients a_{top} and a_{sub} share a root (or vanish)"
                )
            if a.degree < top.pole_order * self.k and b.degree < sub.pole_order * self.k:
                raise DegenerateSection(
                    f"top coefficients a_{top} and a_{sub} share the root s = infinity"
                )

    @property
    def field(self) -> Field:
        return self.coefficients[RRMonomial(0, 0)].field

    def at(self, s0) -> tuple:
        """Specialised coefficients in ``rr_basis`` order."""
        return tuple(self.coefficients[m](s0) for m in rr_basis(self.n))

    def reduce(self, p: int) -> "SpectralSection":
        F = Field(p)
        return SpectralSection(
            self.n, self.k, {m: Poly(F, a.coeffs) for m, a in self.coefficients.items()}
        )

    def infinity_chart(self) -> dict[RRMonomial, Poly]:
        """Coefficients in t = 1/s after x = s^{2k} x', y = s^{3k} y', scaled by t^{2kn}."""
        out = {}
        t = Poly.x(self.field)
        for m, a in self.coefficients.items():
            p = m.pole_order
            out[m] = a.reversed(p * self.k) * t ** (2 * self.k * (self.n - p))
        return out

    def to_json(self) -> dict:
        F = self.field
        return {str(m): [F.to_json(c) for c in self.coefficients[m].coeffs] for m in rr_basis(self.n)}


def _xpoly_mul(P: list[Poly], Q: list[Poly]) -> list[Poly]:
    F = P[0].field
    out = [Poly(F)] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        if a.is_zero():
            continue
        for j, b in enumerate(Q):
            out[i + j] = out[i + j] + a * b
    return out


def _split(n: int, coeffs: Mapping[RRMonomial, Poly]) -> tuple[list[Poly], list[Poly]]:
    """A and B in f = A(x) + B(x) y as coefficient lists of their formal degrees."""
    F = coeffs[RRMonomial(0, 0)].field
    A = [coeffs.get(RRMonomial(i, 0), Poly(F)) for i in range(n // 2 + 1)]
    B = [coeffs.get(RRMonomial(i, 1), Poly(F)) for i in range((n - 3) // 2 + 1)] if n >= 3 else []
    return A, B


def _eliminate(n: int, coeffs, b2: Poly, b3: Poly) -> list[Poly]:
    F = b2.field
    A, B = _split(n, coeffs)
    R = _xpoly_mul(A, A)
    if B:
        cubic = [b3, b2, Poly(F), Poly(F, [1])]
        BBF = _xpoly_mul(_xpoly_mul(B, B), cubic)
        R = [
            (R[i] if i < len(R) else Poly(F)) - (BBF[i] if i < len(BBF) else Poly(F))
            for i in range(max(len(R), len(BBF)))
        ]
    R = R + [Poly(F)] * (n + 1 - len(R))
    return R[: n + 1]


def eliminate_fiber_coordinate(sec: SpectralSection, fam: WeierstrassFamily) -> list[Poly]:
    """R(x, s) = A^2 - B^2 (x^3 + b2 x + b3), as coefficients of x^0..x^n.

    For generic s its roots are the x-coordinates of the n spectral points.
    """
    R = _eliminate(sec.n, sec.coefficients, fam.b2, fam.b3)
    if all(c.is_zero() for c in R[1:]):
        raise DegenerateSection("eliminant is constant in x")
    return R


def _chart_branch(n: int, coeffs, b2: Poly, b3: Poly) -> Poly:
    if n == 2:
        c = coeffs[RRMonomial(0, 0)]
        a = coeffs[RRMonomial(1, 0)]
        N = -(c**3 + b2 * c * a**2 - b3 * a**3)
        return a * N
    R = _eliminate(n, coeffs, b2, b3)
    if R[-1].is_zero():
        raise DegenerateSection("leading x-coefficient of the eliminant vanishes identically")
    disc = form_discriminant_interp(R)
    A, B = _split(n, coeffs)
    res = form_resultant(A, B)
    if res.is_zero():
        raise DegenerateSection("A and B share a factor for every s")
    try:
        return disc.exact_div(res * res)
    except ArithmeticError as exc:
        raise InvariantViolation("Res(A,B)^2 does not divide disc_x(R)") from exc


@dataclass(frozen=True)
class BranchData:
    affine: Poly  # chart s
    infinity: Poly  # chart t = 1/s
    degree: int
    at_infinity: int
    squarefree: bool
    charts_agree: bool


def branch_divisor(sec: SpectralSection, fam: WeierstrassFamily) -> BranchData:
    """Branch divisor of the spectral cover on P^1, reconciled across both charts."""
    if sec.n > 2 and fam.field.is_finite and fam.field.p <= 2 * sec.n:
        raise ValueError("characteristic too small for the discriminant formula")
    Ps = _chart_branch(sec.n, sec.coefficients, fam.b2, fam.b3)
    if Ps.is_zero():
        raise DegenerateSection("branch polynomial vanishes identically (non-reduced cover)")
    if Ps.degree <= 0:
        raise DegenerateSection("branch divisor is constant in s (isotrivial cover)")
    b2t, b3t = fam.infinity_chart()
    Pt = _chart_branch(sec.n, sec.infinity_chart(), b2t, b3t)
    if Pt.is_zero():
        raise DegenerateSection("branch polynomial vanishes identically at infinity")
    a = Ps.order_at_zero()
    b = Pt.order_at_zero()
    core_s = Ps.shift_out_zero()
    core_t = Pt.shift_out_zero()
    agree = core_s.reversed(core_s.degree).monic() == core_t.monic()
    sqf = Ps.is_squarefree()
    if sec.n == 2 and sqf != is_squarefree_by_resultant(Ps):
        raise InvariantViolation("gcd and resultant squarefree tests disagree")
    sqf = sqf and b <= 1
    return BranchData(Ps, Pt, Ps.degree + b, b, sqf, agree)


def spectral_genus(n: int, branch_degree: int, branch_squarefree: bool) -> int:
    """Riemann-Hurwitz for an n-sheeted simply branched cover of P^1."""
    if not branch_squarefree:
        raise ValueError("genus is only asserted for simple branching")
    twice = branch_degree - 2 * n + 2
    if twice % 2:
        raise InvariantViolation(f"odd branch degree {branch_degree} for n = {n}")
    return twice // 2


def hyperelliptic_genus(h: Poly) -> int:
    """Genus of the smooth model of w^2 = h(s), h squarefree; odd degree
    means s = infinity is a branch point."""
    if not is_squarefree_by_resultant(h):
        raise ValueError("h is not squarefree")
    return (h.degree + 1) // 2 - 1


def prym_dimension_sl(genus: int, base_genus: int = 0, series: str = "A") -> int:
    """dim of the norm-zero part of Pic of the spectral curve."""
    if series != "A":
        raise NotImplementedError("Prym dimensions are only implemented for SL(n)")
    return genus - base_genus


def base_dimension(n: int, k: int) -> int:
    return sum(m.pole_order * k + 1 for m in rr_basis(n)) - 1


def moduli_dimension(n: int, k: int, prym_dim: int) -> tuple[int, int]:
    """(base_dim, total_dim) with total = base + Prym."""
    base = base_dimension(n, k)
    return base, base + prym_dim


@dataclass(frozen=True)
class CameralNote:
    """Galois group of the cover inside S_n, when the patterns pin it down."""

    n: int
    group: str | None
    transitive: bool
    evidence: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "transitive": self.transitive,
            "evidence": [list(e) for e in self.evidence],
        }


@dataclass(frozen=True)
class ProbeResult:
    verdict: str
    patterns: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...] | None
    note: CameralNote | None

    @property
    def galois_group(self) -> str | None:
        return self.note.group if self.note else None


def probe_polynomial(sec: SpectralSection, fam: WeierstrassFamily) -> list[Poly]:
    """Bivariate polynomial whose zero set is the spectral curve (birationally)."""
    if sec.n == 2:
        h = _chart_branch(2, sec.coefficients, fam.b2, fam.b3)
        F = h.field
        return [-h, Poly(F), Poly(F, [1])]
    return eliminate_fiber_coordinate(sec, fam)


def connectedness_probe(
    R: list[Poly],
    trials: int = 24,
    primes=PROBE_PRIMES,
    seed: int = 0,
) -> ProbeResult:
    """Specialise s over several prime fields and read factorisation patterns.

    An irreducible specialisation of full degree certifies that R is
    irreducible over the function field; failing that the verdict is
    inconclusive, never a false positive.
    """
    rng = random.Random(seed)
    n = len(R) - 1
    patterns: list[tuple[int, ...]] = []  # cycle types (squarefree specialisations)
    witness = None
    for p in primes:
        if not is_prime(p) or p <= 3:
            continue
        F = Field(p)
        try:
            Rp = [Poly(F, c.coeffs) for c in R]
        except ZeroDivisionError:
            continue  # p divides a denominator
        done = 0
        for _ in range(trials * 4):
            if done == trials:
                break
            s0 = rng.randrange(p)
            f = Poly(F, [c(s0) for c in Rp])
            if f.degree != n:
                continue
            pt = factor_pattern(f)
            if f.is_squarefree():
                patterns.append(pt)
            if witness is None and pt != (n,):
                witness = pt
            done += 1
    irreducible = (n,) in patterns
    if irreducible:
        witness = None
    return ProbeResult(
        VERIFIED if irreducible else INCONCLUSIVE,
        tuple(patterns),
        witness,
        cameral_note(n, patterns) if irreducible else None,
    )


def factor_pattern(f: Poly) -> tuple[int, ...]:
    """Degrees of the irreducible factors of f over F_p, with multiplicity
    (Yun's squarefree decomposition, valid for deg f < p)."""
    if f.degree >= f.field.p:
        raise ValueError("degree must be below the characteristic")
    out: list[int] = []
    b = poly_gcd(f, f.derivative())
    c = f // b
    mult = 1
    while c.degree > 0:
        y = poly_gcd(b, c)
        z = c // y
        if z.degree > 0:
            out += [d for d in z.factor_degrees() for _ in range(mult)]
        b, c = b // y, y
        mult += 1
    return tuple(sorted(out))


def cameral_note(n: int, patterns) -> CameralNote | None:
    """For n = 2, 3 the cycle types seen in squarefree specialisations fix the group."""
    seen = set(patterns)
    irreducible = (n,) in seen
    group = None
    if n == 2 and irreducible:
        group = "S2"
    elif n == 3 and irreducible:
        group = "S3" if (1, 2) in seen else "A3 (no transposition seen)"
    elif n > 3:
        return None
    return CameralNote(n, group, irreducible, tuple(sorted(seen)))


@dataclass(frozen=True)
class SpectralReport:
    n: int
    k: int
    branch_degree: int
    branch_squarefree: bool
    genus: int | None
    prym_dim: int | None
    base_dim: int
    total_moduli_dim: int | None
    connectedness_verdict: str
    affine_branch_degree: int
    branch_at_infinity: int
    charts_agree: bool
    galois_group: str | None
    hyperelliptic_genus: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "branch_degree": self.branch_degree,
            "branch_squarefree": self.branch_squarefree,
            "genus": self.genus,
            "prym_dim": self.prym_dim,
            "base_dim": self.base_dim,
            "total_moduli_dim": self.total_moduli_dim,
            "connectedness_verdict": self.connectedness_verdict,
            "affine_branch_degree": self.affine_branch_degree,
            "branch_at_infinity": self.branch_at_infinity,
            "charts_agree": self.charts_agree,
            "galois_group": self.galois_group,
            "hyperelliptic_genus": self.hyperelliptic_genus,
        }
        out.update(self.extra)
        return out


def spectral_report(sec: SpectralSection, fam: WeierstrassFamily, seed: int = 0) -> SpectralReport:
    if sec.k != fam.k:
        raise ValueError("section and family use different k")
    br = branch_divisor(sec, fam)
    if not br.charts_agree:
        raise InvariantViolation("the two affine charts disagree on the finite branch points")
    genus = spectral_genus(sec.n, br.degree, True) if br.squarefree else None
    hyp = None
    if sec.n == 2 and br.squarefree:
        hyp = hyperelliptic_genus(br.affine)
        if hyp != genus:
            raise InvariantViolation(f"Riemann-Hurwitz genus {genus} != hyperelliptic genus {hyp}")
    prym = prym_dimension_sl(genus) if genus is not None else None
    base = base_dimension(sec.n, sec.k)
    total = base + prym if prym is not None else None
    probe = connectedness_probe(probe_polynomial(sec, fam), seed=seed)
    return SpectralReport(
        sec.n, sec.k, br.degree, br.squarefree, genus, prym, base, total,
        probe.verdict, br.affine.degree, br.at_infinity, br.charts_agree,
        probe.galois_group, hyp,
        extra={"cameral_note": probe.note.to_json() if probe.note else None,
               "probe_witness": list(probe.witness) if probe.witness else None},
    )


def _random_poly(F: Field, rng: random.Random, deg: int, bound: int) -> Poly:
    cs = [rng.randint(-bound, bound) for _ in range(deg)]
    cs.append(rng.choice([v for v in range(-bound, bound + 1) if v != 0]))
    return Poly(F, cs)


def random_instance(
    n: int, k: int, seed: int, bound: int = 6, field: Field = QQ
) -> tuple[WeierstrassFamily, SpectralSection]:
    """Seeded generic family and section with every coefficient of full degree."""
    rng = random.Random(seed)
    for _ in range(100):
        try:
            fam = WeierstrassFamily(
                k, _random_poly(field, rng, 4 * k, bound), _random_poly(field, rng, 6 * k, bound)
            )
            coeffs = {}
            for m in rr_basis(n):
                p = m.pole_order
                coeffs[m] = Poly(field, [1]) if p == 0 else _random_poly(field, rng, p * k, bound)
            return fam, SpectralSection(n, k, coeffs)
        except DegenerateSection:
            continue
    raise RuntimeError("could not draw a generic instance")


def spectral_points(sec: SpectralSection, fam: WeierstrassFamily, s0) -> list[ECPoint] | None:
    """The n points cut out on the fibre over s0 when they are all rational and
    distinct (affine, recovered from the eliminant); None otherwise."""
    F = fam.field
    curve = fam.fiber(s0)
    vals = dict(zip(rr_basis(sec.n), sec.at(s0)))
    if sec.n == 2:
        a = vals[RRMonomial(1, 0)]
        if a == 0:
            return None
        pts = curve.lift_x(F.div(-1, a))
        return pts if len(pts) == 2 else None
    R = eliminate_fiber_coordinate(sec, fam)
    f = Poly(F, [c(s0) for c in R])
    if f.degree != sec.n or not f.is_squarefree():
        return None
    xs = f.roots()
    if len(xs) != sec.n:
        return None
    Ax = lambda x: F(sum(vals[RRMonomial(i, 0)] * x**i for i in range(sec.n // 2 + 1)))
    Bx = lambda x: F(sum(vals.get(RRMonomial(i, 1), 0) * x**i for i in range((sec.n - 3) // 2 + 1)))
    pts = []
    for x in xs:
        if Bx(x) == 0:
            return None
        pts.append(curve.point(x, F.div(-Ax(x), Bx(x))))
    return pts


def fiber_scan(sec: SpectralSection, fam: WeierstrassFamily, s0) -> list[ECPoint]:
    """Brute-force zeros of the specialised section on E_{s0}(F_p)."""
    curve = fam.fiber(s0)
    basis = rr_basis(sec.n)
    coeffs = sec.at(s0)
    F = fam.field
    return [
        P for P in curve.enumerate_points()
        if not P.is_zero and F(sum(c * m.evaluate(F, P) for c, m in zip(coeffs, basis))) == 0
    ]


def specialization_coherence(
    sec: SpectralSection, fam: WeierstrassFamily, p: int = 1009, count: int = 20, seed: int = 0
) -> dict:
    """At ``count`` random s0 in F_p with fully rational fibre, compare the
    eliminant's points with a brute-force fibre scan, and the Abel-Jacobi image
    of those points with the specialised section."""
    famp, secp = fam.reduce(p), sec.reduce(p)
    rng = random.Random(seed)
    checked, failures, tried = 0, [], 0
    while checked < count and tried < 50 * count:
        tried += 1
        s0 = rng.randrange(p)
        if famp.discriminant()(s0) == 0:
            continue
        pts = spectral_points(secp, famp, s0)
        if pts is None:
            continue
        curve = famp.fiber(s0)
        scan = fiber_scan(secp, famp, s0)
        aj = abel_jacobi_sl(curve, pts)
        expected = ProjectivePoint(Field(p), secp.at(s0))
        if sorted(scan) != sorted(pts) or aj != expected:
            failures.append(s0)
        checked += 1
    return {"prime": p, "checked": checked, "failures": failures, "ok": checked == count and not failures}
