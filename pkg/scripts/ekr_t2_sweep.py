#!/usr/bin/env python3
"""Weights, exact certificate, ratio bound and least eigenvalue of B_2 for a range of k.

Optionally also runs the exact maximum-coclique search where |V| <= 1200.
"""
import argparse
import json
import time
from dataclasses import dataclass

from pmscheme.coclique import MAX_VERTICES, max_coclique_exact
from pmscheme.ekr import hoffman_certificate_check, solve_weights
from pmscheme.matchings import count_matchings
from pmscheme.scheme import build_intersection_graph


@dataclass
class Config:
    k_min: int = 4
    k_max: int = 5
    mis: bool = False
    eigen_method: str = "auto"
    out: str | None = None


def run(cfg: Config) -> list:
    rows = []
    for k in range(cfg.k_min, cfg.k_max + 1):
        t0 = time.perf_counter()
        wv = solve_weights(2, k)
        rep = hoffman_certificate_check(wv, eigen_method=cfg.eigen_method)
        row = {"k": k, **rep.to_json(), "seconds": round(time.perf_counter() - t0, 2)}
        if cfg.mis and count_matchings(k) <= MAX_VERTICES:
            res = max_coclique_exact(build_intersection_graph(k, 2))
            row["alpha"] = res.size
            row["alpha_optimal"] = res.optimal
        rows.append(row)
        print(f"k={k}: d={row['d']} bound={row['bound']} family={row['family_size']} "
              f"margin={row['psd_margin']:.2e} verdict={row['verdict']} alpha={row.get('alpha', '-')} "
              f"({row['seconds']}s)")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=4)
    ap.add_argument("--k-max", type=int, default=5)
    ap.add_argument("--mis", action="store_true")
    ap.add_argument("--eigen-method", default="auto", choices=("auto", "dense", "lanczos", "lanczos-implicit"))
    ap.add_argument("--out")
    cfg = Config(**vars(ap.parse_args()))
    rows = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(rows, fh, indent=2)
