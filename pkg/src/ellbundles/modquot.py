"""Quotient maps M^T_E -> M^G_E made explicit.

* SL(n): Abel-Jacobi, sending a reduced divisor of degree n summing to O to
  the function in L(n*O) that cuts it out.
* B_r / C_r: symmetric functions of x-coordinates (Sym^r of the x-line).
* All types: the weighted projective signature (weights, degrees).
* Spin(2r+1): the three branch hyperplanes in Sym^r P^1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import linalg
from .ecurve import ECPoint, WeierstrassCurve, rr_basis
from .fields import Field
from .rootsys import CartanType, check_degree_identities, invariant_degrees, wps_weights

PAIRING_ORDER = (
    "affine weight 1 paired with degree 0; remaining weights in Bourbaki node order "
    "of the dual-system highest short root; degrees ascending"
)
ORBIT_CHECK_LIMITS = {"p": 101, "n": 4}


class DivisorError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates, compared up to (weighted) scaling."""

    field: Field
    coords: tuple
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        cs = tuple(self.field(c) for c in self.coords)
        if all(c == 0 for c in cs):
            raise ValueError("all homogeneous coordinates vanish")
        if self.weights is None:
            # scale so that the last nonzero coordinate is 1
            last = next(c for c in reversed(cs) if c != 0)
            inv = self.field.inv(last)
            cs = tuple(self.field(c * inv) for c in cs)
        object.__setattr__(self, "coords", cs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint) or len(self.coords) != len(other.coords):
            return NotImplemented
        if self.weights is None and other.weights is None:
            return self.coords == other.coords
        w = self.weights or other.weights
        a, b = self.coords, other.coords
        if [c == 0 for c in a] != [c == 0 for c in b]:
            return False
        # a_i = l^{w_i} b_i for some l: test a_i^{w_j} b_j^{w_i} = a_j^{w_i} b_i^{w_j}
        idx = [i for i, c in enumerate(a) if c != 0]
        F = self.field
        return all(
            F(a[i] ** w[j] * b[j] ** w[i]) == F(a[j] ** w[i] * b[i] ** w[j])
            for i, j in itertools.combinations(idx, 2)
        )

    def __hash__(self) -> int:
        return hash(self.coords) if self.weights is None else hash(len(self.coords))

    def affine(self, i: int = 0):
        """Ratio -coords[i] / coords[-1] (the x-value for n = 2)."""
        return self.field.div(-self.coords[i], self.coords[-1])

    def to_json(self):
        return [self.field.to_json(c) for c in self.coords]


def _monomial_row(curve: WeierstrassCurve, basis, P: ECPoint) -> list:
    if P.is_zero:
        # vanishing at O as a section of O(n*O): the top pole-order coefficient is 0
        top = max(m.pole_order for m in basis)
        return [1 if m.pole_order == top else 0 for m in basis]
    return [m.evaluate(curve.field, P) for m in basis]


def check_divisor(curve: WeierstrassCurve, points) -> None:
    points = list(points)
    if len(points) < 2:
        raise DivisorError("need at least two points")
    for P in points:
        if not curve.contains(P):
            raise DivisorError(f"{P} is not on the curve")
    if len(set(points)) != len(points):
        raise DivisorError("divisor is not reduced (repeated point)")
    total = curve.sum(points)
    if not total.is_zero:
        raise DivisorError(f"points do not sum to O (sum = {total})")


def abel_jacobi_sl(curve: WeierstrassCurve, points) -> ProjectivePoint:
    """Coefficients, in the basis ``rr_basis(n)``, of the function with divisor
    sum(P_i) - n*O."""
    points = list(points)
    check_divisor(curve, points)
    basis = rr_basis(len(points))
    M = [_monomial_row(curve, basis, P) for P in points]
    ns = linalg.null_space(M, curve.field)
    if len(ns) != 1:
        raise AssertionError(f"vanishing space has dimension {len(ns)}, expected 1")
    return ProjectivePoint(curve.field, tuple(ns[0]))


def vanishing_residuals(curve: WeierstrassCurve, points, q: ProjectivePoint) -> list:
    basis = rr_basis(len(points))
    F = curve.field
    return [F(sum(a * b for a, b in zip(_monomial_row(curve, basis, P), q.coords))) for P in points]


def x_line_point(curve: WeierstrassCurve, P: ECPoint) -> ProjectivePoint:
    """Image of P in P^1 under x, in the same normalisation as n = 2 Abel-Jacobi."""
    if P.is_zero:
        return ProjectivePoint(curve.field, (1, 0))
    return ProjectivePoint(curve.field, (-P.x, 1))


def reduced_tuples(curve: WeierstrassCurve, n: int, points=None):
    """Ordered n-tuples of distinct points of E(F_p) summing to O."""
    points = points if points is not None else curve.enumerate_points()
    for head in itertools.permutations(points, n - 1):
        last = curve.neg(curve.sum(head))
        if last not in head:
            yield head + (last,)


def fiber_equals_orbit_check(
    curve: WeierstrassCurve,
    n: int,
    quotient_map: Callable | None = None,
) -> bool:
    """Brute force: the map is constant exactly on S_n-orbits of reduced tuples."""
    p = curve.field.p
    if p is None or p > ORBIT_CHECK_LIMITS["p"] or n > ORBIT_CHECK_LIMITS["n"]:
        raise ValueError(f"brute-force guard: need F_p with p <= 101 and n <= 4, got {curve.field}, n={n}")
    qmap = quotient_map or abel_jacobi_sl
    image_of_orbit: dict = {}
    orbit_of_image: dict = {}
    for tup in reduced_tuples(curve, n):
        orbit = frozenset(tup)
        img = qmap(curve, tup)
        if image_of_orbit.setdefault(orbit, img) != img:
            return False
        if orbit_of_image.setdefault(img, orbit) != orbit:
            return False
    return True


def _x_form(curve: WeierstrassCurve, P: ECPoint) -> tuple:
    """(x : z) on the x-line; O goes to (1 : 0)."""
    F = curve.field
    return (F(1), F(0)) if P.is_zero else (P.x, F(1))


def symprod_quotient_bc(curve: WeierstrassCurve, points) -> ProjectivePoint:
    """(sigma_0 : ... : sigma_r), homogenised elementary symmetric functions of
    the x-coordinates; invariant under permutations and P -> -P."""
    F = curve.field
    forms = [_x_form(curve, P) for P in points]
    r = len(forms)
    sig = []
    for j in range(r + 1):
        total = F(0)
        for S in itertools.combinations(range(r), j):
            term = F(1)
            for i in range(r):
                term = F(term * (forms[i][0] if i in S else forms[i][1]))
            total = F(total + term)
        sig.append(total)
    return ProjectivePoint(F, tuple(sig))


def signed_permutation_orbit(curve: WeierstrassCurve, points) -> frozenset:
    """Orbit of an ordered r-tuple under permutations and sign changes."""
    out = set()
    for perm in itertools.permutations(points):
        for signs in itertools.product((False, True), repeat=len(points)):
            out.add(tuple(curve.neg(P) if s else P for P, s in zip(perm, signs)))
    return frozenset(out)


def symprod_fibers_are_orbits(curve: WeierstrassCurve, r: int) -> bool:
    """Exhaustive check over E(F_p)^r that fibres are exactly signed-permutation orbits."""
    pts = curve.enumerate_points()
    by_image: dict = {}
    for tup in itertools.product(pts, repeat=r):
        by_image.setdefault(symprod_quotient_bc(curve, tup), set()).add(tup)
    for img, fibre in by_image.items():
        if signed_permutation_orbit(curve, next(iter(fibre))) != frozenset(fibre):
            return False
    return True


@dataclass(frozen=True)
class WPSSignature:
    cartan_type: CartanType
    weights: tuple[int, ...]
    degrees: tuple[int, ...]
    pairing_order: str = PAIRING_ORDER
    family_pairing_unknown: bool = False
    checks: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "weights": list(self.weights),
            "degrees": list(self.degrees),
            "family_pairing_unknown": self.family_pairing_unknown,
            "checks": {k: ("pass" if v else "fail") for k, v in self.checks.items()},
        }


def wps_signature(t: CartanType) -> WPSSignature:
    """Weighted projective data of M^G_E; E8 is flagged as having no known
    family-level pairing."""
    return WPSSignature(
        t,
        tuple(wps_weights(t)),
        tuple(invariant_degrees(t)),
        family_pairing_unknown=(str(t) == "E8"),
        checks=check_degree_identities(t),
    )


def spin_branch_hyperplanes(curve: WeierstrassCurve, r: int) -> list[tuple]:
    """For each root e of the cubic, h with h . sigma = 0 iff the multiset of
    x-values contains e: h_j = (-e)^(r-j)."""
    roots = curve.cubic().roots()
    if len(roots) != 3:
        raise ValueError("the Weierstrass cubic does not split over the field")
    F = curve.field
    return [tuple(F((-e) ** (r - j)) for j in range(r + 1)) for e in roots]


def on_hyperplane(h, q: ProjectivePoint) -> bool:
    return q.field(sum(a * b for a, b in zip(h, q.coords))) == 0
