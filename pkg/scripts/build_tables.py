#!/usr/bin/env python3
"""Build, check and cache the full character tables, then audit the closed-form grid.

k <= 5 tables are assembled both from the numeric spectrum and from quotients
and must agree exactly; k = 6 comes from quotients only.
"""
import argparse
import time
from dataclasses import dataclass

from pmscheme.chartable import assemble_full_table, cache_path, quotient_table, save_table, verify_table


@dataclass
class Config:
    k_min: int = 2
    k_max: int = 6
    cache: str | None = None


def run(cfg: Config) -> None:
    for k in range(cfg.k_min, cfg.k_max + 1):
        t0 = time.perf_counter()
        table = quotient_table(k)
        fails = table.check_invariants()
        agree = None
        if k <= 5:
            agree = assemble_full_table(k).entries == table.entries
        if not fails:
            save_table(cache_path(k, cfg.cache), table)
        audit = verify_table(k) if k >= 3 else None
        print(f"k={k}: {len(table.modules)} modules, invariant failures {len(fails)}, "
              f"spectrum route agrees {agree}, closed forms {audit and audit['summary']} "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--cache")
    run(Config(**vars(ap.parse_args())))
