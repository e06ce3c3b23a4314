#!/usr/bin/env python3
"""Table of support tau-tilting and tilting counts for the built-in algebras."""
import argparse
import time
from dataclasses import dataclass, field

from qha.auslander import builtin
from qha.formats import parse_field
from qha.replay import stt_counts, tilting_counts


@dataclass
class CountConfig:
    algebras: list[str] = field(default_factory=lambda: ["gamma_1", "gamma_2", "gamma_3", "gamma_4"])
    field_: str | None = None
    tilting: bool = True


def main(cfg: CountConfig) -> None:
    fld = parse_field(cfg.field_) if cfg.field_ else None
    print(f"{'algebra':<10} {'clique':>7} {'mutation':>9} {'same':>5} {'tilting':>8} {'op':>4} {'corpus':>9} {'secs':>6}")
    for name in cfg.algebras:
        t0 = time.perf_counter()
        a = builtin(name, fld)
        s = stt_counts(a)
        t, top = tilting_counts(a) if cfg.tilting and a.n_vertices > 1 else ("-", "-")
        print(f"{name:<10} {s['clique']:>7} {s['mutation']:>9} {str(s['identical']):>5} {t:>8} {top:>4} "
              f"{s['corpus']:>9} {time.perf_counter() - t0:>6.1f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("algebras", nargs="*", default=CountConfig().algebras)
    p.add_argument("--field")
    p.add_argument("--no-tilting", action="store_true")
    args = p.parse_args()
    main(CountConfig(args.algebras, args.field, not args.no_tilting))
