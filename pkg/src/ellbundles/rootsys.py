"""Root systems, Weyl groups and the weighted-projective data of simple types.

Conventions (Bourbaki node labels):

* ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``.
  Column j is alpha_j in the fundamental-weight basis.
* Roots are integer vectors in simple-root coordinates, weights are integer
  vectors in fundamental-weight coordinates.
* B_r has alpha_r short, C_r has alpha_r long, F4 has alpha_1, alpha_2 long,
  G2 has alpha_1 short.  Short roots have squared length 2.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import prod

from . import linalg

Vector = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

_EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
    "G2": (1, 5),
}


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        s, r = self.series, self.rank
        if s in _MIN_RANK:
            ok = isinstance(r, int) and r >= _MIN_RANK[s]
        elif s in _EXCEPTIONAL:
            ok = r in _EXCEPTIONAL[s]
        else:
            ok = False
        if not ok:
            raise ValueError(f"inadmissible Cartan type {s}{r}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise ValueError(f"cannot parse Cartan type {text!r}")
        return cls(text[0], int(text[1:]))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def simply_laced(self) -> bool:
        return self.series in "ADE"


def admissible_types(max_rank: int = 8) -> list[CartanType]:
    """Every admissible type of rank <= max_rank, ordered by series then rank."""
    out = []
    for s in "ABCDEFG":
        if s in _MIN_RANK:
            out += [CartanType(s, r) for r in range(_MIN_RANK[s], max_rank + 1)]
        else:
            out += [CartanType(s, r) for r in _EXCEPTIONAL[s] if r <= max_rank]
    return out


def dual_type(t: CartanType) -> CartanType:
    if t.series == "B":
        return CartanType("C", t.rank)
    if t.series == "C":
        return CartanType("B", t.rank)
    return t


def _edges(t: CartanType) -> list[tuple[int, int]]:
    r = t.rank
    if t.series in "ABCFG":
        return [(i, i + 1) for i in range(r - 1)]
    if t.series == "D":
        return [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    # E: 1-3-4-5-...-r with 2 attached to 4 (Bourbaki), zero-based
    return [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, r - 1)]


def _gram(t: CartanType) -> list[list[int]]:
    r = t.rank
    lengths = [2] * r
    if t.series == "B":
        lengths = [4] * (r - 1) + [2]
    elif t.series == "C":
        lengths = [2] * (r - 1) + [4]
    elif t.series == "F":
        lengths = [4, 4, 2, 2]
    elif t.series == "G":
        lengths = [2, 6]
    G = [[0] * r for _ in range(r)]
    for i in range(r):
        G[i][i] = lengths[i]
    for i, j in _edges(t):
        # adjacent simple roots meet at 120/135/150 degrees: (a,b) = -max/2
        v = -max(lengths[i], lengths[j]) // 2
        G[i][j] = G[j][i] = v
    return G


def cartan_matrix(t: CartanType) -> list[list[int]]:
    G = _gram(t)
    r = t.rank
    return [[2 * G[i][j] // G[i][i] for j in range(r)] for i in range(r)]


@dataclass(frozen=True)
class RootSystemData:
    cartan_type: CartanType
    cartan_matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    simple_roots: tuple[Vector, ...]
    roots: tuple[Vector, ...]
    root_lengths: dict = field(compare=False, hash=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(b for b in self.roots if sum(b) > 0)

    def pairing(self, a: Vector, b: Vector) -> Fraction:
        """Invariant form with short roots of squared length 2."""
        d, A = self.symmetrizer, self.cartan_matrix
        return sum(
            a[i] * d[i] * 2 * A[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if a[i] and b[j]
        ) / Fraction(2)

    def coroot_pairing(self, i: int, b: Vector) -> int:
        """<alpha_i^vee, b> for b in simple-root coordinates."""
        return sum(self.cartan_matrix[i][j] * b[j] for j in range(self.rank))

    def reflect(self, i: int, b: Vector) -> Vector:
        c = self.coroot_pairing(i, b)
        return tuple(v - c if k == i else v for k, v in enumerate(b))

    def to_weight_coords(self, b: Vector) -> Vector:
        return tuple(self.coroot_pairing(i, b) for i in range(self.rank))

    def from_weight_coords(self, lam: Vector) -> tuple[Fraction, ...]:
        """Simple-root coordinates of a weight (rational in general)."""
        inv = linalg.inverse(self.cartan_matrix)
        return tuple(linalg.matvec(inv, lam))

    def length_class(self, b: Vector) -> str:
        """'short' or 'long'; simply-laced systems only have 'short'."""
        short = min(self.root_lengths.values())
        return "short" if self.root_lengths[b] == short else "long"

    @property
    def length_classes(self) -> int:
        return len(set(self.root_lengths.values()))


def _symmetrizer(A: list[list[int]]) -> tuple[Fraction, ...]:
    r = len(A)
    d: list[Fraction | None] = [None] * r
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(r):
            if j != i and A[i][j] != 0 and d[j] is None:
                d[j] = d[i] * A[i][j] / A[j][i]
                queue.append(j)
    if any(v is None for v in d):
        raise ValueError("Cartan matrix is decomposable")
    m = min(d)
    return tuple(v / m for v in d)


def root_system_from_cartan(t: CartanType, A) -> RootSystemData:
    """Reflection closure of the simple roots of an indecomposable Cartan matrix."""
    A = tuple(tuple(row) for row in A)
    r = len(A)
    d = _symmetrizer([list(row) for row in A])
    simple = tuple(tuple(1 if k == i else 0 for k in range(r)) for i in range(r))
    proto = RootSystemData(t, A, d, simple, simple, {})
    seen = set(simple)
    queue = deque(simple)
    while queue:
        b = queue.popleft()
        for i in range(r):
            c = proto.reflect(i, b)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    roots = tuple(sorted(seen, key=lambda b: (sum(b), b)))
    lengths = {b: proto.pairing(b, b) for b in roots}
    return RootSystemData(t, A, d, simple, roots, lengths)


@lru_cache(maxsize=None)
def build_root_system(t: CartanType) -> RootSystemData:
    return root_system_from_cartan(t, cartan_matrix(t))


@lru_cache(maxsize=None)
def coroot_system(t: CartanType) -> RootSystemData:
    """The dual root system labelled by the nodes of ``t`` (transposed Cartan)."""
    return root_system_from_cartan(dual_type(t), linalg.transpose(cartan_matrix(t)))


def cartan_determinant(rs: RootSystemData) -> int:
    return int(linalg.det(rs.cartan_matrix))


def is_dominant(rs: RootSystemData, b: Vector) -> bool:
    return all(rs.coroot_pairing(i, b) >= 0 for i in range(rs.rank))


def highest_root(rs: RootSystemData) -> Vector:
    return max(rs.roots, key=sum)


def highest_short_root(rs: RootSystemData) -> Vector:
    short = min(rs.root_lengths.values())
    dom = [b for b in rs.roots if rs.root_lengths[b] == short and is_dominant(rs, b)]
    if len(dom) != 1:
        raise AssertionError(f"expected one dominant short root, found {dom}")
    return dom[0]


def wps_weights(t: CartanType) -> list[int]:
    """Looijenga weights: 1 for the affine node, then the coefficients of the
    highest short root of the dual system, listed by the nodes of ``t``."""
    return [1] + list(highest_short_root(coroot_system(t)))


def exponents(t: CartanType) -> tuple[int, ...]:
    r = t.rank
    if t.series == "A":
        return tuple(range(1, r + 1))
    if t.series in "BC":
        return tuple(range(1, 2 * r, 2))
    if t.series == "D":
        return tuple(sorted(list(range(1, 2 * r - 2, 2)) + [r - 1]))
    return _EXPONENTS[str(t)]


def invariant_degrees(t: CartanType) -> list[int]:
    return [0] + sorted(m + 1 for m in exponents(t))


@dataclass(frozen=True)
class WeightLatticeData:
    cartan_type: CartanType
    basis: tuple[str, ...]
    root_in_weight_coords: tuple[Vector, ...]
    weyl_generators: tuple[tuple[Vector, ...], ...]


def weight_lattice(rs: RootSystemData) -> WeightLatticeData:
    r = rs.rank
    cols = tuple(tuple(rs.cartan_matrix[i][j] for i in range(r)) for j in range(r))
    gens = []
    for j in range(r):
        # s_j(lam) = lam - lam_j * alpha_j
        m = [[(1 if a == b else 0) - (cols[j][a] if b == j else 0) for b in range(r)] for a in range(r)]
        gens.append(tuple(tuple(row) for row in m))
    return WeightLatticeData(
        rs.cartan_type, tuple(f"w{i + 1}" for i in range(r)), cols, tuple(gens)
    )


def reflect_weight(rs: RootSystemData, i: int, lam: Vector) -> Vector:
    col = [rs.cartan_matrix[k][i] for k in range(rs.rank)]
    return tuple(v - lam[i] * c for v, c in zip(lam, col))


class OrbitTooLarge(ValueError):
    pass


def weyl_orbit(rs: RootSystemData, v: Vector, max_rank: int = 7) -> set[Vector]:
    """Full W-orbit of a weight by breadth-first closure under simple reflections."""
    if rs.rank > max_rank:
        raise OrbitTooLarge(f"orbit enumeration refused for rank {rs.rank} > {max_rank}")
    v = tuple(v)
    seen = {v}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for i in range(rs.rank):
            if w[i] == 0:
                continue
            u = reflect_weight(rs, i, w)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def _load_tables() -> dict:
    with resources.files("ellbundles.data").joinpath("classical.json").open() as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def classical_tables() -> dict:
    return _load_tables()


def classical(key: str, t: CartanType) -> int:
    return classical_tables()[key][str(t)]


def check_degree_identities(t: CartanType) -> dict[str, bool]:
    """Degree/weight identities against the independent classical tables."""
    degs = invariant_degrees(t)[1:]
    nroots = classical("root_count", t)
    return {
        "sum_weights_eq_dual_coxeter": sum(wps_weights(t)) == classical("dual_coxeter", t),
        "prod_degrees_eq_weyl_order": prod(degs) == classical("weyl_order", t),
        "sum_degrees_minus_one_eq_positive_roots": sum(d - 1 for d in degs) == nroots // 2,
    }
