"""Exact coefficient fields: the rationals and prime fields F_p.

Rational elements are ``fractions.Fraction``; residues are plain ints in
``range(p)``.  Arithmetic on raw elements uses the Python operators and is
normalised with ``Field.__call__``; only division needs the field.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """``Field()`` is Q, ``Field(p)`` is F_p for a prime p > 3."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p <= 3 or not is_prime(self.p)):
            raise ValueError(f"characteristic must be a prime > 3, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"q"`` or ``"p:<prime>"``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rational"):
            return cls()
        if text.startswith("p:"):
            return cls(int(text[2:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'p:<prime>'")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def token(self) -> str:
        return "q" if self.p is None else f"p:{self.p}"

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def __call__(self, v):
        if self.p is None:
            return Fraction(v)
        if isinstance(v, Fraction):
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        if isinstance(v, str):
            return self(Fraction(v))
        return int(v) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self(a * self.inv(b))

    def elements(self):
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def random(self, rng: random.Random, bound: int = 10):
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        a = self(a)
        if a == 0:
            return a
        if self.p is None:
            if a < 0:
                return None
            n, d = a.numerator, a.denominator
            rn, rd = isqrt(n), isqrt(d)
            if rn * rn == n and rd * rd == d:
                return Fraction(rn, rd)
            return None
        p = self.p
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        return _tonelli_shanks(a, p)

    def to_json(self, a):
        """Serialise an element as int or "num/den" string."""
        if self.p is None:
            a = Fraction(a)
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r
