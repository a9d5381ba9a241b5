#!/usr/bin/env python3
"""Audit the printed diagonals of the [2k-4,2,2] quotient matrices for k = 4..6."""
import argparse
import json
import time
from dataclasses import dataclass

from pmscheme.quotient import verify_appendix_diagonals


@dataclass
class Config:
    k_min: int = 4
    k_max: int = 6
    out: str | None = None


def run(cfg: Config) -> dict:
    reports = []
    for k in range(cfg.k_min, cfg.k_max + 1):
        t0 = time.perf_counter()
        rep = verify_appendix_diagonals(k)
        rep["seconds"] = round(time.perf_counter() - t0, 3)
        reports.append(rep)
        for tab in rep["tables"]:
            cells = ", ".join(f"{d['computed']}/{d['printed']} {d['status']}" for d in tab["diagonal"])
            print(f"k={k} subgroup {tab['subgroup']}: computed/printed {cells}; eigenvalues {tab['eigenvalues']}")
    return {"config": vars(cfg), "reports": reports}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=4)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--out")
    cfg = Config(**vars(ap.parse_args()))
    result = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(result, fh, indent=2, default=str)
