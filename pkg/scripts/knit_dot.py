#!/usr/bin/env python3
"""Knit the AR quiver of an algebra and write it, with its mutation graph, as DOT files."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from qha.auslander import KnitCapExceeded, knit
from qha.formats import resolve_algebra
from qha.taurigid import enumerate_stt_mutation


@dataclass
class DotConfig:
    algebra: str = "builtin:gamma_3"
    out_dir: Path = Path("dot")
    knit_cap: int = 500
    mutation_cap: int = 10000


def main(cfg: DotConfig) -> None:
    a = resolve_algebra(cfg.algebra)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stem = (a.name or "algebra").replace("(", "_").replace(")", "")
    try:
        ar = knit(a, cfg.knit_cap)
    except KnitCapExceeded as e:
        ar = e.partial
        print(f"knitting stopped at the cap; writing the partial quiver ({len(ar)} modules)")
    (cfg.out_dir / f"{stem}_ar.dot").write_text(ar.to_dot())
    res = enumerate_stt_mutation(a, cfg.mutation_cap)
    (cfg.out_dir / f"{stem}_mutation.dot").write_text(res.to_dot())
    print(f"{len(ar)} indecomposables, {len(res.pairs)} support tau-tilting pairs -> {cfg.out_dir}/")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("algebra", nargs="?", default=DotConfig.algebra)
    p.add_argument("--out-dir", type=Path, default=DotConfig.out_dir)
    p.add_argument("--knit-cap", type=int, default=DotConfig.knit_cap)
    p.add_argument("--mutation-cap", type=int, default=DotConfig.mutation_cap)
    args = p.parse_args()
    main(DotConfig(args.algebra, args.out_dir, args.knit_cap, args.mutation_cap))
