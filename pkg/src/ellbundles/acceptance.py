"""Acceptance criteria as plain functions.

Each ``criterion_N`` returns a ``CriterionResult``; the ``details`` dict holds
only deterministic values (no timings), so that serialised runs can be
compared byte for byte.  Runtime budgets are enforced by the test suite.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .ecurve import ZERO, WeierstrassCurve
from .fields import QQ, GF
from .modquot import (
    abel_jacobi_sl,
    fiber_equals_orbit_check,
    symprod_fibers_are_orbits,
    wps_signature,
    x_line_point,
)
from .rootsys import CartanType, admissible_types, build_root_system, cartan_determinant
from .spectral import VERIFIED, random_instance, spectral_report, specialization_coherence
from .tbundle import ONE_PARAMETER_FAMILY, TBundlePoint, deformation_dims, scan_strata, sl2_ubar_fiber_count

BUDGETS = {1: 1.0, 2: 1.0, 3: 5.0, 4: 30.0, 5: 10.0, 6: 1.0, 7: 60.0}

# frozen from scripts/derive_oracles.py (sympy, two charts), seed 0
SPECTRAL_ORACLE = {
    (2, 1): {"branch_degree": 14, "genus": 6, "prym_dim": 6, "base_dim": 3, "total_moduli_dim": 9},
    (3, 1): {"branch_degree": 30, "genus": 13, "prym_dim": 13, "base_dim": 7, "total_moduli_dim": 20},
}
DETERMINANTS = {"A": lambda r: r + 1, "B": lambda r: 2, "C": lambda r: 2, "D": lambda r: 4}
EXCEPTIONAL_DETERMINANTS = {"E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "details": self.details}


def criterion_1(max_rank: int = 8) -> CriterionResult:
    failures = []
    types = admissible_types(max_rank)
    for t in types:
        sig = wps_signature(t)
        if not all(sig.checks.values()):
            failures.append(str(t))
    # the three explicit classical statements
    explicit = {}
    for r in range(1, max_rank + 1):
        a = wps_signature(CartanType("A", r))
        explicit[f"A{r}"] = a.weights == (1,) * (r + 1) and a.degrees == (0,) + tuple(range(2, r + 2))
        if r >= 2:
            bc_degrees = (0,) + tuple(range(2, 2 * r + 1, 2))
            b = wps_signature(CartanType("B", r))
            c = wps_signature(CartanType("C", r))
            explicit[f"B{r}"] = sorted(b.weights) == [1, 1, 1] + [2] * (r - 2) and b.degrees == bc_degrees
            explicit[f"C{r}"] = c.weights == (1,) * (r + 1) and c.degrees == bc_degrees
    bad_explicit = sorted(k for k, v in explicit.items() if not v)
    return CriterionResult(
        1, "wps atlas identities", not failures and not bad_explicit,
        {"types": len(types), "identity_failures": failures, "explicit_failures": bad_explicit},
    )


def criterion_2(max_rank: int = 8) -> CriterionResult:
    got, bad = {}, []
    for t in admissible_types(max_rank):
        d = cartan_determinant(build_root_system(t))
        want = EXCEPTIONAL_DETERMINANTS.get(str(t)) or DETERMINANTS[t.series](t.rank)
        got[str(t)] = d
        if d != want:
            bad.append(str(t))
    return CriterionResult(2, "cartan determinants", not bad, {"mismatches": bad, "checked": len(got)})


def _count_points(p: int, b2: int, b3: int, nsq: list[int]) -> int:
    return 1 + sum(nsq[(x * x * x + b2 * x + b3) % p] for x in range(p))


def criterion_3(seed: int = 0, triples: int = 1000) -> CriterionResult:
    rng = random.Random(seed)
    F = GF(1009)
    curve = WeierstrassCurve(F, 3, 7)
    bad_law = 0
    for _ in range(triples):
        P, Q, R = (curve.random_point(rng) for _ in range(3))
        ok = (
            curve.add(P, ZERO) == P
            and curve.add(P, curve.neg(P)) == ZERO
            and curve.add(P, Q) == curve.add(Q, P)
            and curve.add(curve.add(P, Q), R) == curve.add(P, curve.add(Q, R))
        )
        bad_law += not ok
    # every nonsingular curve over F_101: Hasse and Lagrange
    p = 101
    nsq = [0] * p
    for y in range(p):
        nsq[y * y % p] += 1
    Fp = GF(p)
    curves = hasse_bad = lagrange_bad = 0
    for b2 in range(p):
        for b3 in range(p):
            if (4 * b2**3 + 27 * b3**2) % p == 0:
                continue
            curves += 1
            N = _count_points(p, b2, b3, nsq)
            if (N - p - 1) ** 2 > 4 * p:
                hasse_bad += 1
            E = WeierstrassCurve(Fp, b2, b3)
            P = E.random_point(rng)
            if not E.scalar_mul(N, P).is_zero:
                lagrange_bad += 1
    # the point count agrees with full enumeration on a sample
    sample_ok = all(
        len(WeierstrassCurve(Fp, b2, b3).enumerate_points()) == _count_points(p, b2, b3, nsq)
        for b2, b3 in ((1, 1), (0, 5), (7, 0), (33, 64))
    )
    return CriterionResult(
        3, "elliptic group law",
        bad_law == 0 and hasse_bad == 0 and lagrange_bad == 0 and sample_ok,
        {"triples": triples, "law_failures": bad_law, "curves_f101": curves,
         "hasse_failures": hasse_bad, "lagrange_failures": lagrange_bad, "count_cross_check": sample_ok},
    )


def criterion_4() -> CriterionResult:
    E11 = WeierstrassCurve(GF(11), 1, 1)
    n2 = fiber_equals_orbit_check(E11, 2)
    n3 = fiber_equals_orbit_check(E11, 3)
    xmap = all(
        abel_jacobi_sl(E11, [P, E11.neg(P)]) == x_line_point(E11, P)
        for P in E11.enumerate_points()
        if not P.is_zero and P.y != 0
    )
    E13 = WeierstrassCurve(GF(13), -1, 0)
    bc = symprod_fibers_are_orbits(E13, 2)
    return CriterionResult(
        4, "quotient maps", n2 and n3 and xmap and bc,
        {"aj_n2_orbits": n2, "aj_n3_orbits": n3, "n2_is_x_map": xmap, "symprod_r2_orbits": bc},
    )


G2_LEVI = ("0", "A1^short", "A1^long", "G2")
G2_EXOTIC = ("A2^long", "A1^long x A1^short")


def g2_strata_curve() -> WeierstrassCurve:
    """y^2 = x^3 - x over F_11: split 2-torsion and rational 3-torsion."""
    return WeierstrassCurve(GF(11), -1, 0)


def criterion_5(seed: int = 0) -> CriterionResult:
    E = g2_strata_curve()
    rs = build_root_system(CartanType("G", 2))
    found = scan_strata(E, rs, E.enumerate_points())
    levi_ok = all(t in found and found[t]["is_levi"] for t in G2_LEVI)
    exotic_ok = all(t in found and not found[t]["is_levi"] for t in G2_EXOTIC)
    rng = random.Random(seed)
    E1009 = WeierstrassCurve(GF(1009), -1, 0)
    generic = [
        deformation_dims(TBundlePoint(E1009, (E1009.random_point(rng), E1009.random_point(rng))), rs)
        for _ in range(10)
    ]
    generic_ok = all(d == (2, 0) for d in generic)
    return CriterionResult(
        5, "G2 strata", levi_ok and exotic_ok and generic_ok,
        {"realised": {k: v["is_levi"] for k, v in sorted(found.items())},
         "generic_dims": [list(d) for d in generic]},
    )


def criterion_6() -> CriterionResult:
    E = WeierstrassCurve(QQ, -1, 0)
    on = sl2_ubar_fiber_count(E, True)
    off = sl2_ubar_fiber_count(E, False)
    return CriterionResult(
        6, "SL(2) universal-space fibres", on == 4 and off == ONE_PARAMETER_FAMILY,
        {"on_diagonal": on, "off_diagonal": off},
    )


def criterion_7(seed: int = 0) -> CriterionResult:
    details, ok = {}, True
    for (n, k), want in SPECTRAL_ORACLE.items():
        fam, sec = random_instance(n, k, seed)
        rep = spectral_report(sec, fam, seed=seed).to_json()
        got = {key: rep[key] for key in want}
        coh = specialization_coherence(sec, fam, p=1009, count=20, seed=seed)
        row_ok = (
            got == want
            and rep["branch_squarefree"]
            and rep["charts_agree"]
            and rep["connectedness_verdict"] == VERIFIED
            and coh["ok"]
        )
        if n == 2:
            row_ok = row_ok and rep["hyperelliptic_genus"] == rep["genus"]
        ok = ok and row_ok
        details[f"n{n}_k{k}"] = {
            **got,
            "hyperelliptic_genus": rep["hyperelliptic_genus"],
            "verdict": rep["connectedness_verdict"],
            "galois_group": rep["galois_group"],
            "coherence_checked": coh["checked"],
            "coherence_failures": coh["failures"],
        }
    return CriterionResult(7, "spectral suite", ok, details)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}
SEEDED = {3, 5, 7}


def run_criterion(i: int, seed: int = 0) -> CriterionResult:
    fn = CRITERIA[i]
    return fn(seed=seed) if i in SEEDED else fn()


def run_suite(seed: int = 0, timings: dict | None = None) -> list[CriterionResult]:
    out = []
    for i in sorted(CRITERIA):
        t0 = time.perf_counter()
        out.append(run_criterion(i, seed))
        if timings is not None:
            timings[i] = time.perf_counter() - t0
    return out


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def criterion_8(payloads: list[str]) -> CriterionResult:
    """Given two or more serialised selftest payloads, they must be identical."""
    same = len(payloads) >= 2 and all(p == payloads[0] for p in payloads)
    return CriterionResult(8, "determinism", same, {"runs": len(payloads)})
