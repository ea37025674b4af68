"""Dense univariate polynomials over an exact field, plus the few
multivariate tools the spectral computations need (Sylvester resultants of
binary forms with polynomial coefficients, via fraction-free elimination).
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd
from typing import Callable, Iterable, Sequence

from .fields import Field


class Poly:
    """Polynomial with coefficients ``coeffs[i]`` of ``var**i``; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def from_roots(cls, field: Field, roots) -> "Poly":
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [-r, 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field(0)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if i == 0 else f"{c}*s^{i}")
        return " + ".join(terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return self.coeffs == Poly(self.field, [other]).coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly(self.field, [other])

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = self.field(other)
            return Poly(self.field, [a * c for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out, base = Poly(self.field, [1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(F), self
        inv_lc = F.inv(other.lc)
        quo = [0] * (dq + 1)
        db = other.degree
        for k in range(dq, -1, -1):
            c = F(rem[k + db] * inv_lc)
            quo[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = F(rem[k + j] - c * b)
        return Poly(F, quo), Poly(F, rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, v):
        acc = self.field(0)
        for c in reversed(self.coeffs):
            acc = self.field(acc * v + c)
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.field.inv(self.lc)

    def reversed(self, formal_degree: int) -> "Poly":
        """t^d * f(1/t) for the formal degree d >= deg f."""
        if self.degree > formal_degree:
            raise ValueError("formal degree below actual degree")
        cs = list(self.coeffs) + [0] * (formal_degree + 1 - len(self.coeffs))
        return Poly(self.field, cs[::-1])

    def order_at_zero(self) -> int:
        if self.is_zero():
            raise ValueError("order of the zero polynomial")
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise AssertionError

    def shift_out_zero(self) -> "Poly":
        """Divide out the full power of the variable."""
        return Poly(self.field, self.coeffs[self.order_at_zero():])

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        out, base = Poly(self.field, [1]), self % mod
        while e:
            if e & 1:
                out = out * base % mod
            base = base * base % mod
            e >>= 1
        return out

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        return poly_gcd(self, self.derivative()).degree == 0

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self.monic()
        g = poly_gcd(self, self.derivative())
        return (self // g).monic()

    def roots(self) -> list:
        """Distinct roots lying in the base field, sorted."""
        if self.is_zero():
            raise ValueError("roots of the zero polynomial")
        if self.field.is_finite:
            return sorted(_roots_mod_p(self))
        return sorted(rational_roots(self))

    def factor_degrees(self) -> list[int]:
        """Degrees of the irreducible factors over F_p of a squarefree poly."""
        if not self.field.is_finite:
            raise ValueError("degree pattern only implemented over F_p")
        if not self.is_squarefree():
            raise ValueError("degree pattern needs a squarefree polynomial")
        return distinct_degree_pattern(self)


def _primitive(f: Poly) -> Poly:
    """Over Q, the primitive integer polynomial proportional to f."""
    if f.field.is_finite or f.is_zero():
        return f
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = igcd(g, c)
    return Poly(f.field, [Fraction(c, g) for c in ints])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    # primitive remainder sequence: keeps rational coefficients small
    a, b = _primitive(a), _primitive(b)
    while not b.is_zero():
        a, b = b, _primitive(a % b)
    return a.monic()


def poly_resultant(a: Poly, b: Poly) -> object:
    """Resultant of two univariate polys over a field (Euclidean algorithm)."""
    F = a.field
    if a.is_zero() or b.is_zero():
        return F(0)
    res = F(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return F(res * b.lc**da)
        r = a % b
        if r.is_zero():
            return F(0)
        if da * db % 2:
            res = -res
        res = F(res * b.lc ** (da - r.degree))
        a, b = b, r


def rational_roots(f: Poly) -> set:
    """Rational roots via the rational root theorem on the integerised poly."""
    den = 1
    for c in f.coeffs:
        den = den * Fraction(c).denominator // igcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f.coeffs]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for q in _divisors(an):
        for pnum in _divisors(a0):
            for sgn in (1, -1):
                r = Fraction(sgn * pnum, q)
                if sum(c * r**i for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return roots


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _roots_mod_p(f: Poly) -> set:
    F = f.field
    p = F.p
    if f.degree <= 0:
        return set()
    x = Poly.x(F)
    g = poly_gcd(f, x.powmod(p, f) - x)
    return set(_split_linear(g, random.Random(p)))


def _split_linear(g: Poly, rng: random.Random) -> list:
    """Roots of a monic product of distinct linear factors (Cantor-Zassenhaus)."""
    F = g.field
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [F(-g.coeffs[0])]
    if g.coeff(0) == 0:
        return [F(0)] + _split_linear(g // Poly.x(F), rng)
    p = F.p
    while True:
        a = Poly(F, [rng.randrange(p), 1])
        h = poly_gcd(g, a.powmod((p - 1) // 2, g) - 1)
        if 0 < h.degree < g.degree:
            return _split_linear(h, rng) + _split_linear(g // h, rng)


def distinct_degree_pattern(f: Poly) -> list[int]:
    F = f.field
    p = F.p
    f = f.monic()
    x = Poly.x(F)
    h = x
    pattern: list[int] = []
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = h.powmod(p, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            pattern += [i] * (g.degree // i)
            f = f // g
            h = h % f
    if f.degree > 0:
        pattern.append(f.degree)
    return sorted(pattern)


def bareiss_det(matrix: Sequence[Sequence], exact_div: Callable, zero, one):
    """Fraction-free determinant over an integral domain with exact division."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k] == zero:
            for i in range(k + 1, n):
                if M[i][k] != zero:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester(f: Sequence, g: Sequence, zero) -> list[list]:
    """Sylvester matrix of binary forms given by coefficient lists (low to high).

    The formal degrees are ``len(f) - 1`` and ``len(g) - 1``; vanishing leading
    coefficients are kept, so this is the resultant of the homogenised forms.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh, gh = list(f)[::-1], list(g)[::-1]
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - n - 1 - i))
    return rows


def form_resultant(f: Sequence[Poly], g: Sequence[Poly]) -> Poly:
    """Resultant of two binary forms whose coefficients are polys in s."""
    F = f[0].field
    zero, one = Poly(F), Poly(F, [1])
    if len(f) == 1 and len(g) == 1:
        return one
    M = sylvester(f, g, zero)
    return bareiss_det(M, lambda a, b: a.exact_div(b), zero, one)


def form_discriminant(f: Sequence[Poly]) -> Poly:
    """Discriminant of a binary form of formal degree n = len(f) - 1 >= 1.

    Uses Res(f, f') = (-1)^{n(n-1)/2} * c_n * Disc(f), with f' of formal degree
    n - 1; the division by c_n is exact as a polynomial identity.
    """
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs formal degree >= 1")
    if f[-1].is_zero():
        raise ArithmeticError("leading coefficient of the form vanishes identically")
    df = [f[i] * i for i in range(1, n + 1)]
    res = form_resultant(f, df)
    d = res.exact_div(f[-1])
    return -d if (n * (n - 1) // 2) % 2 else d


def field_resultant(f: Poly, g: Poly):
    """Resultant from the Sylvester determinant over the base field.

    Independent of ``poly_resultant`` (Euclid); used to cross-check it.
    """
    F = f.field
    M = sylvester(list(f.coeffs), list(g.coeffs), F(0))
    return bareiss_det(M, F.div, F(0), F(1))


def is_squarefree_by_resultant(f: Poly) -> bool:
    if f.degree <= 0:
        return True
    return field_resultant(f, f.derivative()) != 0


def interpolate(field: Field, xs: Sequence, ys: Sequence) -> Poly:
    """Newton interpolation through distinct nodes."""
    xs = [field(x) for x in xs]
    coef = [field(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = field.div(coef[i] - coef[i - 1], xs[i] - xs[i - j])
    out = Poly(field, [coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * Poly(field, [-xs[i], 1]) + coef[i]
    return out


def _sample_points(field: Field):
    if field.is_finite:
        yield from range(field.p)
    else:
        yield 0
        i = 1
        while True:
            yield i
            yield -i
            i += 1


def form_discriminant_interp(f: Sequence[Poly]) -> Poly:
    """Same value as ``form_discriminant``, by evaluating at enough base
    points and interpolating.  Much faster for large forms; falls back to the
    symbolic route when the field is too small."""
    n = len(f) - 1
    F = f[0].field
    if n < 1:
        raise ValueError("discriminant needs formal degree >= 1")
    if f[-1].is_zero():
        raise ArithmeticError("leading coefficient of the form vanishes identically")
    bound = (2 * n - 2) * max(c.degree for c in f)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    xs, ys = [], []
    for s0 in _sample_points(F):
        if len(xs) == bound + 1:
            break
        vals = [c(s0) for c in f]
        if vals[-1] == 0:
            continue
        dvals = [F(i * vals[i]) for i in range(1, n + 1)]
        res = bareiss_det(sylvester(vals, dvals, F(0)), F.div, F(0), F(1))
        xs.append(s0)
        ys.append(F(sign * F.div(res, vals[-1])))
    if len(xs) < bound + 1:
        return form_discriminant(f)
    return interpolate(F, xs, ys)
