"""Points of Hom(Lambda, E): T-bundles on an elliptic curve, their Weyl
action, kernel subroot systems and deformation dimensions."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg
from .ecurve import ZERO, ECPoint, WeierstrassCurve
from .rootsys import CartanType, RootSystemData, Vector, root_system_from_cartan

ONE_PARAMETER_FAMILY = "one-parameter family (E)"


@dataclass(frozen=True)
class TBundlePoint:
    """Images of the fundamental weights w_1..w_r under p: Lambda -> E."""

    curve: WeierstrassCurve
    images: tuple[ECPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        for P in self.images:
            if not self.curve.contains(P):
                raise ValueError(f"image {P} is not on {self.curve}")


def evaluate(p: TBundlePoint, lam) -> ECPoint:
    """p(lam) for lam in fundamental-weight coordinates."""
    if len(lam) != len(p.images):
        raise ValueError("weight has the wrong rank")
    c = p.curve
    acc = ZERO
    for n, P in zip(lam, p.images):
        if n:
            acc = c.add(acc, c.scalar_mul(int(n), P))
    return acc


def evaluate_root(p: TBundlePoint, rs: RootSystemData, beta: Vector) -> ECPoint:
    return evaluate(p, rs.to_weight_coords(beta))


def integer_inverse(w) -> list[list[int]]:
    inv = linalg.inverse(w)
    out = [[int(v) for v in row] for row in inv]
    if any(v != int(v) for row in inv for v in row):
        raise ValueError("matrix is not unimodular")
    return out


def weyl_act(w, p: TBundlePoint) -> TBundlePoint:
    """(w.p)(lam) = p(w^{-1} lam); w acts on fundamental-weight coordinates."""
    winv = integer_inverse(w)
    r = len(p.images)
    images = []
    for k in range(r):
        col = [winv[i][k] for i in range(r)]  # w^{-1} w_k
        images.append(evaluate(p, col))
    return TBundlePoint(p.curve, tuple(images))


@dataclass(frozen=True)
class SubsystemReport:
    roots_in_kernel: frozenset
    cartan_type: str
    components: tuple[str, ...]
    is_levi: bool
    dim_g_prime: int
    nilpotent_dim: int


def is_closed(roots: set, rs: RootSystemData) -> bool:
    ambient = set(rs.roots)
    for a in roots:
        if tuple(-v for v in a) not in roots:
            return False
        for b in roots:
            c = tuple(u + v for u, v in zip(a, b))
            if c in ambient and c not in roots:
                return False
    return True


def is_levi(sub, rs: RootSystemData) -> bool:
    """R' is a Levi subsystem iff R meets the rational span of R' only in R'."""
    sub = set(sub)
    if not sub:
        return True
    basis = [list(b) for b in sub]
    rk = linalg.rank(basis)
    for b in rs.roots:
        if b not in sub and linalg.rank(basis + [list(b)]) == rk:
            return False
    return True


def _simple_system(sub: set, rng: random.Random, retries: int = 50) -> list[Vector]:
    r = len(next(iter(sub)))
    for _ in range(retries):
        f = [rng.randint(1, 10_000) for _ in range(r)]
        vals = {b: sum(x * y for x, y in zip(f, b)) for b in sub}
        if any(v == 0 for v in vals.values()):
            continue
        pos = {b for b in sub if vals[b] > 0}
        sums = {tuple(u + v for u, v in zip(a, b)) for a in pos for b in pos}
        return sorted(b for b in pos if b not in sums)
    raise RuntimeError("no regular functional found for the subsystem")


def _identify(n: int, nroots: int, nshort: int) -> str:
    """Simple type from (rank, |R|, #short roots); these invariants separate all types."""
    if nshort == nroots:
        if nroots == n * (n + 1):
            return f"A{n}"
        if n >= 4 and nroots == 2 * n * (n - 1):
            return f"D{n}"
        if (n, nroots) in ((6, 72), (7, 126), (8, 240)):
            return f"E{n}"
    else:
        if nroots == 2 * n * n:
            if n == 2:
                return "B2"
            return f"B{n}" if nshort == 2 * n else f"C{n}"
        if (n, nroots) == (4, 48):
            return "F4"
        if (n, nroots) == (2, 12):
            return "G2"
    raise ValueError(f"unrecognised root system: rank {n}, {nroots} roots, {nshort} short")


def classify_subsystem(sub, rs: RootSystemData, seed: int = 0) -> tuple[str, tuple[str, ...]]:
    """Type of a closed subsystem, e.g. ``"A1^long x A1^short"``; ``"0"`` if empty.

    Simply-laced factors of a two-length ambient system carry their ambient
    length class.
    """
    sub = set(sub)
    if not sub:
        return "0", ()
    simple = _simple_system(sub, random.Random(seed))
    k = len(simple)
    gram = [[rs.pairing(a, b) for b in simple] for a in simple]
    # connected components of the Dynkin graph
    comp_of = list(range(k))
    for i, j in itertools.combinations(range(k), 2):
        if gram[i][j] != 0:
            a, b = comp_of[i], comp_of[j]
            comp_of = [a if c == b else c for c in comp_of]
    factors = []
    for label in sorted(set(comp_of)):
        idx = [i for i in range(k) if comp_of[i] == label]
        A = [[int(2 * gram[i][j] / gram[i][i]) for j in idx] for i in idx]
        dummy = CartanType("A", len(idx))
        sys = root_system_from_cartan(dummy, A)
        nshort = sum(1 for v in sys.root_lengths.values() if v == min(sys.root_lengths.values()))
        name = _identify(len(idx), len(sys.roots), nshort)
        if sys.length_classes == 1 and rs.length_classes == 2:
            name += "^" + rs.length_class(simple[idx[0]])
        factors.append(name)
    factors.sort(key=lambda s: (s[0], s))
    return " x ".join(factors), tuple(factors)


def kernel_roots(p: TBundlePoint, rs: RootSystemData) -> frozenset:
    return frozenset(b for b in rs.roots if evaluate_root(p, rs, b).is_zero)


def kernel_subsystem(p: TBundlePoint, rs: RootSystemData) -> SubsystemReport:
    if len(p.images) != rs.rank:
        raise ValueError("T-bundle point and root system have different ranks")
    sub = kernel_roots(p, rs)
    if not is_closed(sub, rs):
        raise AssertionError("kernel subsystem is not closed")
    name, comps = classify_subsystem(sub, rs)
    h0, nil = rs.rank + len(sub), len(sub)
    return SubsystemReport(sub, name, comps, is_levi(sub, rs), h0, nil)


def deformation_dims(p: TBundlePoint, rs: RootSystemData) -> tuple[int, int]:
    """(dim H^0(ad P), dim of the nilpotent cone of g') for the semisimple bundle."""
    sub = kernel_roots(p, rs)
    return rs.rank + len(sub), len(sub)


def scan_strata(curve: WeierstrassCurve, rs: RootSystemData, points) -> dict[str, dict]:
    """Realised stratum types over all assignments of ``points`` to the
    fundamental weights; one witness per type."""
    found: dict[str, dict] = {}
    for imgs in itertools.product(points, repeat=rs.rank):
        p = TBundlePoint(curve, imgs)
        sub = kernel_roots(p, rs)
        if len(sub) == 0 and "0" in found:
            continue
        name, _ = classify_subsystem(sub, rs)
        if name not in found:
            found[name] = {"images": imgs, "is_levi": is_levi(sub, rs), "size": len(sub)}
    return found


def sl2_ubar_fiber_count(curve: WeierstrassCurve, on_diagonal: bool):
    """Fibre of the SL(2) space {(C, t) : Stab_W(C) in Stab_W(t)}/W.

    Off the diagonal C is a torus with trivial stabiliser, so every t in E
    qualifies.  On the diagonal Stab_W(C) = W = {1, -1}, so t = -t is needed.
    """
    tors = curve.two_torsion()
    if len(tors) != 4:
        raise ValueError("the 2-torsion of the curve is not rational (cubic does not split)")
    if not on_diagonal:
        return ONE_PARAMETER_FAMILY
    if curve.field.is_finite and curve.field.p <= 10_000:
        fixed = [t for t in curve.enumerate_points() if curve.neg(t) == t]
    else:
        # over Q the solutions of t = -t are exactly y = 0 or t = O
        fixed = [t for t in tors if curve.neg(t) == t]
    return len(fixed)
