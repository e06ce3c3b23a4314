#!/usr/bin/env python3
"""Run every replay case and property suite, printing PASS/FAIL lines and a summary."""
import argparse
import sys
from dataclasses import dataclass

from qha.formats import parse_field
from qha.replay import case_aus_a3, case_gamma, case_props


@dataclass
class VerifyConfig:
    max_n: int = 4
    seed: int = 0
    random_modules: int = 50
    field_: str | None = None


def main(cfg: VerifyConfig) -> int:
    fld = parse_field(cfg.field_) if cfg.field_ else None
    reports = [case_gamma(n, fld) for n in range(1, cfg.max_n + 1)]
    reports += [case_aus_a3(fld), case_props(cfg.seed, fld, cfg.random_modules)]
    for r in reports:
        print("\n".join(r.lines()))
        print(f"  ({r.seconds:.1f}s)")
    bad = [r.case for r in reports if not r.ok]
    print(f"{len(reports) - len(bad)}/{len(reports)} reports passed" + (f"; failing: {bad}" if bad else ""))
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=VerifyConfig.max_n)
    p.add_argument("--seed", type=int, default=VerifyConfig.seed)
    p.add_argument("--random-modules", type=int, default=VerifyConfig.random_modules)
    p.add_argument("--field")
    args = p.parse_args()
    sys.exit(main(VerifyConfig(args.max_n, args.seed, args.random_modules, args.field)))
