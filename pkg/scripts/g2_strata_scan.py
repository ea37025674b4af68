"""Scan all T-bundle points of G2 over a small prime field and list the
realised kernel subsystems with a witness each.

Run:  python scripts/g2_strata_scan.py [--p 11] [--b2 -1] [--b3 0]
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from ellbundles.ecurve import WeierstrassCurve, point_to_json
from ellbundles.fields import GF
from ellbundles.rootsys import CartanType, build_root_system
from ellbundles.tbundle import scan_strata


@dataclass
class ScanConfig:
    p: int = 11
    b2: int = -1
    b3: int = 0
    cartan_type: str = "G2"


def main(cfg: ScanConfig) -> None:
    E = WeierstrassCurve(GF(cfg.p), cfg.b2, cfg.b3)
    rs = build_root_system(CartanType.parse(cfg.cartan_type))
    pts = E.enumerate_points()
    print(f"{E}: {len(pts)} points, split 2-torsion: {E.has_split_cubic()}")
    found = scan_strata(E, rs, pts)
    for name, info in sorted(found.items(), key=lambda kv: kv[1]["size"]):
        imgs = [point_to_json(E, P) for P in info["images"]]
        orders = [E.order(P) for P in info["images"]]
        print(f"{name:22s} levi={info['is_levi']!s:5s} |R'|={info['size']:2d} images={imgs} orders={orders}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=11)
    ap.add_argument("--b2", type=int, default=-1)
    ap.add_argument("--b3", type=int, default=0)
    ap.add_argument("--type", default="G2")
    a = ap.parse_args()
    main(ScanConfig(a.p, a.b2, a.b3, a.type))
