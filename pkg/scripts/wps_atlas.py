"""Print the weighted projective atlas (weights, degrees, identity checks).

Run:  python scripts/wps_atlas.py [--max-rank 8] [--format md]
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from ellbundles.cli import cmd_wps_table, to_markdown


@dataclass
class AtlasConfig:
    max_rank: int = 8
    types: str = "all"
    format: str = "md"


def main(cfg: AtlasConfig) -> None:
    env = cmd_wps_table(cfg.types, cfg.max_rank)
    print(to_markdown(env) if cfg.format == "md" else env.dumps())


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-rank", type=int, default=8)
    ap.add_argument("--types", default="all")
    ap.add_argument("--format", choices=("md", "json"), default="md")
    a = ap.parse_args()
    main(AtlasConfig(a.max_rank, a.types, a.format))
