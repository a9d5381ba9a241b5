#!/usr/bin/env python3
"""Exact module eigenvalues of B_3 at k=6 and where the spectrum sits relative to [-1, d]."""
import argparse
import json
from dataclasses import dataclass
from fractions import Fraction

from pmscheme.ekr import conjecture_t3_spectrum_check


@dataclass
class Config:
    k: int = 6
    numeric: bool = True
    out: str | None = None


def run(cfg: Config) -> dict:
    rep = conjecture_t3_spectrum_check(cfg.k, numeric=cfg.numeric)
    d = Fraction(rep["d"])
    print(f"k={cfg.k}  d={rep['d']}  bound={rep['bound']}  |S|={rep['family_size']}  "
          f"certificate={rep['certificate']['certificate_residual_zero']}")
    for e in rep["module_eigenvalues"]:
        v = Fraction(e["value"])
        flag = "" if -1 <= v <= d else "  <-- outside [-1, d]"
        print(f"  {str(e['module']):22s} {e['value']:>8s}  mult {e['multiplicity']}{flag}")
    if "numeric" in rep:
        print(f"numeric extremes: {rep['numeric']['min']:.9f} .. {rep['numeric']['max']:.9f}")
    return rep


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--no-numeric", dest="numeric", action="store_false")
    ap.add_argument("--out")
    cfg = Config(**vars(ap.parse_args()))
    rep = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(rep, fh, indent=2)
