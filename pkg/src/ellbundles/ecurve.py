"""Short Weierstrass curves y^2 = x^3 + b2 x + b3 over Q or F_p.

Points are ``ECPoint(x, y)``; the marked origin is ``ZERO`` (x = y = None).
All arithmetic is exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from .fields import QQ, Field
from .poly import Poly

ENUMERATION_LIMIT = 10_000


class ECPoint(NamedTuple):
    x: object = None
    y: object = None

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return "O" if self.is_zero else f"({self.x}, {self.y})"


ZERO = ECPoint()


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    field: Field
    b2: object
    b3: object

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "b2", F(self.b2))
        object.__setattr__(self, "b3", F(self.b3))
        if self.discriminant == 0:
            raise ValueError(f"singular curve: 4*b2^3 + 27*b3^2 = 0 over {F}")

    @classmethod
    def from_roots(cls, field: Field, e1, e2) -> "WeierstrassCurve":
        """Curve whose cubic splits as (x-e1)(x-e2)(x-e3) with e1+e2+e3 = 0."""
        e1, e2 = field(e1), field(e2)
        e3 = field(-e1 - e2)
        return cls(field, e1 * e2 + e2 * e3 + e1 * e3, -e1 * e2 * e3)

    @property
    def discriminant(self):
        return self.field(4 * self.b2**3 + 27 * self.b3**2)

    def __str__(self) -> str:
        return f"y^2 = x^3 + {self.b2}*x + {self.b3} over {self.field}"

    def cubic(self) -> Poly:
        return Poly(self.field, [self.b3, self.b2, 0, 1])

    def rhs(self, x):
        return self.field(x**3 + self.b2 * x + self.b3)

    def contains(self, P: ECPoint) -> bool:
        if P.is_zero:
            return True
        F = self.field
        return F(P.y * P.y) == self.rhs(P.x)

    def point(self, x, y) -> ECPoint:
        P = ECPoint(self.field(x), self.field(y))
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    def lift_x(self, x) -> list[ECPoint]:
        """Points with the given x-coordinate (0, 1 or 2 of them)."""
        x = self.field(x)
        y = self.field.sqrt(self.rhs(x))
        if y is None:
            return []
        if y == 0:
            return [ECPoint(x, y)]
        return sorted([ECPoint(x, y), ECPoint(x, self.field(-y))])

    def neg(self, P: ECPoint) -> ECPoint:
        if P.is_zero:
            return P
        return ECPoint(P.x, self.field(-P.y))

    def add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        if P.is_zero:
            return Q
        if Q.is_zero:
            return P
        F = self.field
        if P.x == Q.x:
            if F(P.y + Q.y) == 0:
                return ZERO
            lam = F.div(3 * P.x * P.x + self.b2, 2 * P.y)
        else:
            lam = F.div(Q.y - P.y, Q.x - P.x)
        x3 = F(lam * lam - P.x - Q.x)
        y3 = F(lam * (P.x - x3) - P.y)
        R = ECPoint(x3, y3)
        assert self.contains(R), "group law left the curve"
        return R

    def sub(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        return self.add(P, self.neg(Q))

    def sum(self, points) -> ECPoint:
        acc = ZERO
        for P in points:
            acc = self.add(acc, P)
        return acc

    def scalar_mul(self, n: int, P: ECPoint) -> ECPoint:
        if n < 0:
            return self.scalar_mul(-n, self.neg(P))
        acc, base = ZERO, P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def two_torsion(self) -> list[ECPoint]:
        """ZERO and every (e, 0) with e a root of the cubic in the field."""
        return [ZERO] + [ECPoint(e, self.field(0)) for e in self.cubic().roots()]

    def has_split_cubic(self) -> bool:
        return len(self.two_torsion()) == 4

    def enumerate_points(self) -> list[ECPoint]:
        """All points over a small prime field by an x-scan."""
        p = self.field.p
        if p is None:
            raise ValueError("point enumeration needs a finite field")
        if p > ENUMERATION_LIMIT:
            raise ValueError(f"enumeration guard: p = {p} > {ENUMERATION_LIMIT}")
        roots: dict[int, list[int]] = {}
        for y in range(p):
            roots.setdefault(y * y % p, []).append(y)
        pts = [ZERO]
        for x in range(p):
            for y in roots.get(self.rhs(x), []):
                pts.append(ECPoint(x, y))
        return pts

    def random_point(self, rng: random.Random, bound: int = 10) -> ECPoint:
        """A random affine point (rational searches try small x first)."""
        F = self.field
        for _ in range(10_000):
            x = F.random(rng, bound)
            pts = self.lift_x(x)
            if pts:
                return rng.choice(pts)
        raise RuntimeError("no point found; curve too sparse for random search")

    def order(self, P: ECPoint, limit: int | None = None) -> int:
        """Order of P by repeated addition (finite fields only)."""
        if self.field.p is None and limit is None:
            raise ValueError("order search over Q needs an explicit limit")
        limit = limit or 2 * self.field.p + 2
        Q, n = P, 1
        while not Q.is_zero:
            Q = self.add(Q, P)
            n += 1
            if n > limit:
                raise ValueError("order exceeds limit")
        return n


@dataclass(frozen=True, order=True)
class RRMonomial:
    """x^i y^j with j <= 1; a function with a pole of order 2i + 3j at ZERO."""

    i: int
    j: int

    @property
    def pole_order(self) -> int:
        return 2 * self.i + 3 * self.j

    def __str__(self) -> str:
        parts = []
        if self.i:
            parts.append("x" if self.i == 1 else f"x^{self.i}")
        if self.j:
            parts.append("y")
        return "*".join(parts) or "1"

    def evaluate(self, field: Field, P: ECPoint):
        if P.is_zero:
            raise ValueError("monomials have a pole at ZERO")
        return field(P.x**self.i * P.y**self.j)


def rr_basis(n: int) -> list[RRMonomial]:
    """Basis of L(n*ZERO) ordered by pole order: 1, x, y, x^2, xy, ..."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mons = [RRMonomial(i, j) for j in (0, 1) for i in range(n + 1) if 2 * i + 3 * j <= n]
    return sorted(mons, key=lambda m: m.pole_order)


def parse_point(curve: WeierstrassCurve, text: str) -> ECPoint:
    """``"x,y"`` or ``"O"``/``"inf"`` for the origin."""
    text = text.strip()
    if text.lower() in ("o", "0", "inf", "zero"):
        return ZERO
    xs, ys = text.split(",")
    return curve.point(curve.field(xs.strip()), curve.field(ys.strip()))


def point_to_json(curve: WeierstrassCurve, P: ECPoint):
    if P.is_zero:
        return "O"
    return [curve.field.to_json(P.x), curve.field.to_json(P.y)]


def rational_curve(b2, b3) -> WeierstrassCurve:
    return WeierstrassCurve(QQ, b2, b3)
