"""Command-line front end: ``ellbundles <command> [options]``.

JSON (sorted keys) is the canonical output; ``--format md`` renders a table
view of the same payload.  Exit codes: 0 ok, 1 bad input, 2 internal
invariant violation, 3 selftest failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .acceptance import BUDGETS, canonical_json, criterion_8, run_suite
from .ecurve import NotOnCurve, WeierstrassCurve, parse_point, point_to_json, rr_basis
from .fields import Field
from .modquot import PAIRING_ORDER, DivisorError, abel_jacobi_sl, vanishing_residuals, wps_signature
from .poly import Poly
from .rootsys import CartanType, admissible_types, build_root_system
from .spectral import (
    DISCRIMINANT_CONVENTION,
    DegenerateSection,
    InvariantViolation,
    SpectralSection,
    WeierstrassFamily,
    branch_divisor,
    random_instance,
    specialization_coherence,
    spectral_report,
)
from .tbundle import TBundlePoint, deformation_dims, kernel_subsystem

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_SELFTEST = 0, 1, 2, 3
SPECTRAL_N = (2, 3, 4)
SPECTRAL_K = (1, 2, 3)

CONVENTIONS = {
    "weight_degree_pairing": PAIRING_ORDER,
    "discriminant": DISCRIMINANT_CONVENTION,
    "curve": "y^2 = x^3 + b2*x + b3",
    "projective_coordinates": "scaled so the last nonzero coordinate is 1",
    "riemann_roch_basis": "1, x, y, x^2, x*y, ... ordered by pole order",
    "cartan_matrix": "A[i][j] = <alpha_i^vee, alpha_j>, Bourbaki node order",
}


class InputError(ValueError):
    pass


@dataclass
class ReportEnvelope:
    command: str
    input: dict
    payload: dict
    version: str = __version__
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS))

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input": self.input,
            "version": self.version,
            "conventions": self.conventions,
            "payload": self.payload,
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())


# ---- parsing helpers


def parse_types(text: str, max_rank: int) -> list[CartanType]:
    if max_rank > 8 or max_rank < 1:
        raise InputError("max rank must be between 1 and 8")
    admissible = admissible_types(max_rank)
    if text.strip().lower() == "all":
        return admissible
    out = []
    for tok in text.split(","):
        tok = tok.strip().upper()
        if len(tok) == 1:
            sel = [t for t in admissible if t.series == tok]
            if not sel:
                raise InputError(f"unknown type token {tok!r}")
            out += sel
            continue
        try:
            t = CartanType.parse(tok)
        except ValueError as exc:
            raise InputError(f"unknown type token {tok!r}") from exc
        if t.rank > max_rank:
            raise InputError(f"{t} exceeds max rank {max_rank}")
        out.append(t)
    return out


def parse_curve(text: str, F: Field) -> WeierstrassCurve:
    try:
        b2, b3 = (v.strip() for v in text.split(","))
        return WeierstrassCurve(F, F(b2), F(b3))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad curve {text!r}: {exc}") from exc


def parse_points(text: str, curve: WeierstrassCurve) -> list:
    """Points separated by ';', each ``x,y`` or ``O``."""
    try:
        return [parse_point(curve, tok) for tok in text.split(";") if tok.strip()]
    except NotOnCurve as exc:
        raise InputError(str(exc)) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad points {text!r}: {exc}") from exc


# ---- commands


def cmd_wps_table(types: str = "all", max_rank: int = 8) -> ReportEnvelope:
    rows = [wps_signature(t).to_json() for t in parse_types(types, max_rank)]
    return ReportEnvelope(
        "wps-table",
        {"types": types, "max_rank": max_rank},
        {"rows": rows, "all_checks_pass": all(v == "pass" for r in rows for v in r["checks"].values())},
    )


def cmd_strata(type_: str, curve: str, field_: str, points: str) -> ReportEnvelope:
    F = _field(field_)
    t = parse_types(type_, 8)
    if len(t) != 1:
        raise InputError("strata needs exactly one type, e.g. G2")
    rs = build_root_system(t[0])
    E = parse_curve(curve, F)
    imgs = parse_points(points, E)
    if len(imgs) != rs.rank:
        raise InputError(f"{t[0]} needs {rs.rank} images, got {len(imgs)}")
    p = TBundlePoint(E, tuple(imgs))
    rep = kernel_subsystem(p, rs)
    h0, nil = deformation_dims(p, rs)
    payload = {
        "subsystem_type": rep.cartan_type,
        "components": list(rep.components),
        "is_levi": rep.is_levi,
        "kernel_roots": sorted(list(b) for b in rep.roots_in_kernel),
        "kernel_root_count": len(rep.roots_in_kernel),
        "deformation_dims": [h0, nil],
        "images": [point_to_json(E, P) for P in imgs],
    }
    return ReportEnvelope(
        "strata", {"type": str(t[0]), "curve": curve, "field": F.token, "points": points}, payload
    )


def cmd_abel_jacobi(curve: str, field_: str, points: str) -> ReportEnvelope:
    F = _field(field_)
    E = parse_curve(curve, F)
    pts = parse_points(points, E)
    try:
        q = abel_jacobi_sl(E, pts)
    except DivisorError as exc:
        raise InputError(str(exc)) from exc
    res = vanishing_residuals(E, pts, q)
    if any(r != 0 for r in res):
        raise InvariantViolation(f"nonzero vanishing residuals {res}")
    payload = {
        "n": len(pts),
        "basis": [str(m) for m in rr_basis(len(pts))],
        "coordinates": q.to_json(),
        "residuals": [F.to_json(r) for r in res],
    }
    return ReportEnvelope("abel-jacobi", {"curve": curve, "field": F.token, "points": points}, payload)


def _load_coeffs(text: str, n: int, k: int, F: Field):
    path = Path(text)
    data = json.loads(path.read_text() if path.exists() else text)
    fam = WeierstrassFamily(k, Poly(F, [F(c) for c in data["b2"]]), Poly(F, [F(c) for c in data["b3"]]))
    given = data["section"]
    coeffs = {}
    for m in rr_basis(n):
        raw = given.get(str(m), [1] if m.pole_order == 0 else None)
        if raw is None:
            raise InputError(f"missing coefficient for monomial {m}")
        coeffs[m] = Poly(F, [F(c) for c in raw])
    return fam, SpectralSection(n, k, coeffs)


def cmd_spectral_report(
    n: int, k: int, seed: int = 0, field_: str = "q", coeffs: str | None = None, selfcheck: bool = False
) -> ReportEnvelope:
    if n not in SPECTRAL_N or k not in SPECTRAL_K:
        raise InputError(f"need n in {SPECTRAL_N} and k in {SPECTRAL_K}")
    F = _field(field_)
    try:
        if coeffs:
            fam, sec = _load_coeffs(coeffs, n, k, F)
        else:
            fam, sec = random_instance(n, k, seed, field=F)
    except (KeyError, json.JSONDecodeError) as exc:
        raise InputError(f"bad coefficient data: {exc}") from exc
    except DegenerateSection:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = spectral_report(sec, fam, seed=seed)
    payload = {"report": rep.to_json(), "family": fam.to_json(), "section": sec.to_json()}
    if selfcheck:
        br = branch_divisor(sec, fam)
        coh = specialization_coherence(sec, fam, p=1009, count=20, seed=seed) if not F.is_finite else None
        checks = {
            "charts_agree": br.charts_agree,
            "riemann_hurwitz": rep.genus is None
            or 2 * rep.genus - 2 == -2 * n + rep.branch_degree,
            "additivity": rep.total_moduli_dim is None
            or rep.total_moduli_dim == rep.base_dim + rep.prym_dim,
            "coherence": coh,
        }
        payload["selfcheck"] = checks
        if not (checks["charts_agree"] and checks["riemann_hurwitz"] and checks["additivity"]) or (
            coh is not None and not coh["ok"]
        ):
            raise InvariantViolation(f"selfcheck failed: {checks}")
    return ReportEnvelope(
        "spectral-report",
        {"n": n, "k": k, "seed": seed, "field": F.token, "coeffs": coeffs, "selfcheck": selfcheck},
        payload,
    )


def selftest_payload(seed: int = 0, timings: dict | None = None) -> dict:
    results = run_suite(seed, timings)
    return {"seed": seed, "criteria": [r.to_json() for r in results]}


def cmd_selftest(seed: int = 0, log=None) -> tuple[ReportEnvelope, bool]:
    timings: dict = {}
    first = selftest_payload(seed, timings)
    second = selftest_payload(seed)
    c8 = criterion_8([canonical_json(first), canonical_json(second)])
    criteria = first["criteria"] + [c8.to_json()]
    if log is not None:
        for c in criteria:
            i = c["criterion"]
            extra = f" ({timings[i]:.2f}s, budget {BUDGETS[i]:.0f}s)" if i in timings else ""
            print(f"[{'PASS' if c['passed'] else 'FAIL'}] {i}. {c['name']}{extra}", file=log)
    failing = [c for c in criteria if not c["passed"]]
    payload = {
        "seed": seed,
        "criteria": criteria,
        "passed": not failing,
        "first_failure": failing[0]["name"] if failing else None,
    }
    return ReportEnvelope("selftest", {"seed": seed}, payload), not failing


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---- markdown views


def _md_table(headers, rows) -> str:
    out = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    out += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(out)


def to_markdown(env: ReportEnvelope) -> str:
    p = env.payload
    head = f"## {env.command}\n\nversion {env.version}; input `{json.dumps(env.input, sort_keys=True)}`\n\n"
    if env.command == "wps-table":
        rows = [
            (r["type"], r["weights"], r["degrees"], ", ".join(f"{k}={v}" for k, v in r["checks"].items()),
             "yes" if r["family_pairing_unknown"] else "")
            for r in p["rows"]
        ]
        return head + _md_table(["type", "weights", "degrees", "checks", "pairing unknown"], rows)
    if env.command == "strata":
        rows = [(p["subsystem_type"], p["is_levi"], p["kernel_root_count"], p["deformation_dims"])]
        return head + _md_table(["R'", "Levi", "#roots", "dims"], rows)
    if env.command == "abel-jacobi":
        rows = list(zip(p["basis"], p["coordinates"]))
        return head + _md_table(["monomial", "coefficient"], rows)
    if env.command == "spectral-report":
        rows = sorted(p["report"].items())
        return head + _md_table(["field", "value"], rows)
    if env.command == "selftest":
        rows = [(c["criterion"], c["name"], "pass" if c["passed"] else "FAIL") for c in p["criteria"]]
        return head + _md_table(["#", "criterion", "result"], rows)
    return head + "```json\n" + env.dumps() + "\n```"


# ---- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ellbundles", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "md"), default="json")
        return sp

    sp = common(sub.add_parser("wps-table", help="weights and degrees per Cartan type"))
    sp.add_argument("--type", default="all", help="'all', a series letter, or types like B3,G2")
    sp.add_argument("--rank", type=int, default=8, help="maximal rank")

    sp = common(sub.add_parser("strata", help="kernel subroot system of a T-bundle point"))
    sp.add_argument("--type", required=True)
    sp.add_argument("--curve", required=True, help='"b2,b3"')
    sp.add_argument("--field", default="q", help="q or p:<prime>")
    sp.add_argument("--points", required=True, help='images of fundamental weights, "x,y;x,y" or O')

    sp = common(sub.add_parser("abel-jacobi", help="SL(n) quotient map of a divisor"))
    sp.add_argument("--curve", required=True)
    sp.add_argument("--field", default="q")
    sp.add_argument("--points", required=True)

    sp = common(sub.add_parser("spectral-report", help="spectral cover of a family"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--field", default="q")
    sp.add_argument("--coeffs", help="JSON (inline or file) with b2, b3 and section coefficients")
    sp.add_argument("--selfcheck", action="store_true")

    sp = common(sub.add_parser("selftest", help="run the acceptance suite"))
    sp.add_argument("--seed", type=int, default=0)
    return ap


def _dispatch(args) -> tuple[ReportEnvelope, int]:
    if args.command == "wps-table":
        return cmd_wps_table(args.type, args.rank), EXIT_OK
    if args.command == "strata":
        return cmd_strata(args.type, args.curve, args.field, args.points), EXIT_OK
    if args.command == "abel-jacobi":
        return cmd_abel_jacobi(args.curve, args.field, args.points), EXIT_OK
    if args.command == "spectral-report":
        env = cmd_spectral_report(args.n, args.k, args.seed, args.field, args.coeffs, args.selfcheck)
        return env, EXIT_OK
    env, ok = cmd_selftest(args.seed, log=sys.stderr)
    return env, EXIT_OK if ok else EXIT_SELFTEST


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env, code = _dispatch(args)
    except (DegenerateSection, InvariantViolation, AssertionError) as exc:
        print(f"error: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(to_markdown(env) if args.format == "md" else env.dumps())
    return code


if __name__ == "__main__":
    sys.exit(main())
