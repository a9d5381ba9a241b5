"""Command-line entry point: `pmscheme <subcommand> ...`.

Exit codes: 0 when every check passes, 1 on a verification mismatch,
2 on usage or resource errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import chartable, coclique, ekr, matchings, quotient, scheme
from .exact import frac_str
from .partitions import PartitionError, even_partitions, fmt, hook_dimension, is_primary, parse_partition

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    k: int | None = None
    k_range: tuple | None = None
    t: int | None = None
    mode: str = "dense"
    method: str = "quotient"
    cache: str | None = None
    json: bool = False
    workers: int | None = None

    def validate(self) -> None:
        if self.k is not None and not 1 <= self.k <= matchings.MAX_ENUMERATION_K:
            raise UsageError(f"k must be in 1..{matchings.MAX_ENUMERATION_K}")
        if self.mode not in ("dense", "implicit"):
            raise UsageError("--mode must be dense or implicit")
        if self.workers is not None and self.workers < 1:
            raise UsageError("--workers must be positive")


def parse_k_range(text: str) -> tuple:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise UsageError(f"bad k range {text!r}; expected A..B") from None
    if a > b:
        raise UsageError(f"empty k range {text!r}")
    return a, b


def _need_k(args) -> int:
    if args.k is None:
        raise UsageError("--k is required")
    return args.k


def _partition(text, k):
    try:
        return parse_partition(text, k)
    except (PartitionError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# ---- subcommands: each returns (payload, passed, text_lines)

def cmd_enumerate(args, cfg):
    k = _need_k(args)
    n = matchings.count_matchings(k)
    if args.count_only:
        return {"k": k, "count": str(n)}, True, [str(n)]
    if k > 5:
        raise UsageError("listing is limited to k <= 5; use --count-only")
    fam = matchings.enumerate_matchings(k)
    lines = [" ".join(f"{a}{b}" if 2 * k < 10 else f"{a}-{b}" for a, b in m) for m in fam.members]
    return {"k": k, "count": str(n), "members": [[list(e) for e in m] for m in fam.members]}, True, lines


def cmd_classes(args, cfg):
    k = _need_k(args)
    if args.family:
        lam = _partition(args.family, k)
        return {"k": k, "family": args.family, "partition": list(lam)}, True, [fmt(lam)]
    rows, lines = [], []
    for i, lam in enumerate(even_partitions(2 * k)):
        row = {"index": i, "partition": list(lam), "degree": str(scheme.class_degree(lam, k)),
               "module_dimension": str(hook_dimension(lam)), "primary": is_primary(lam)}
        rows.append(row)
        lines.append(f"{i:3d}  {fmt(lam):18s} degree {row['degree']:>10s}  dim {row['module_dimension']}")
    return {"k": k, "classes": rows}, True, lines


def cmd_degrees(args, cfg):
    k = _need_k(args)
    degs = [(lam, scheme.class_degree(lam, k)) for lam in even_partitions(2 * k)]
    total = sum(d for _, d in degs)
    n = matchings.count_matchings(k)
    ok = total == n
    payload = {"k": k, "degrees": [{"class": list(l), "degree": str(d)} for l, d in degs],
               "sum": str(total), "count": str(n), "sum_equals_count": ok}
    lines = [f"{fmt(l):18s} {d}" for l, d in degs] + [f"sum {total} = (2k-1)!! {n}: {ok}"]
    return payload, ok, lines


def cmd_scheme_check(args, cfg):
    k = _need_k(args)
    if k > scheme.MAX_DENSE_K:
        raise matchings.ResourceError(f"scheme-check is guarded at k <= {scheme.MAX_DENSE_K}")
    rep = scheme.verify_scheme_axioms(k)
    lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in rep.checks.items()]
    return rep.to_json(), rep.passed, lines


def cmd_quotient(args, cfg):
    k = _need_k(args)
    if k > quotient.MAX_QUOTIENT_K:
        raise matchings.ResourceError(f"quotients are guarded at k <= {quotient.MAX_QUOTIENT_K}")
    if args.appendix:
        rep = quotient.verify_appendix_diagonals(k)
        ok = all(e["status"] != "mismatch" for tab in rep["tables"] for e in tab["diagonal"]) \
            if "tables" in rep else True
        return rep, ok, [json.dumps(rep, indent=1)]
    if not args.cls or not args.subgroup:
        raise UsageError("--class and --subgroup are required (or --appendix)")
    lam, mu = _partition(args.cls, k), _partition(args.subgroup, k)
    Q = quotient.quotient_matrix(lam, mu, k, verify=args.verify)
    ev = Q.eigen()
    payload = {
        "k": k, "class": list(lam), "subgroup": list(mu),
        "cell_sizes": [str(s) for s in Q.cell_sizes],
        "matrix": Q.entries, "diagonal": Q.diagonal, "row_sums": Q.row_sums, "trace": Q.trace,
        "charpoly": [frac_str(c) for c in ev.charpoly],
        "roots": [frac_str(v) for v in ev.values()],
        "unresolved": [[frac_str(c) for c in u["poly"]] for u in ev.unresolved],
    }
    assigned = _assign_modules(lam, mu, k)
    payload["eigenvalues"] = [{"module": list(m), "value": frac_str(v), "multiplicity": n}
                              for m, v, n in assigned]
    consistent = not assigned or sorted(v for _, v, n in assigned for _ in range(n)) == sorted(ev.roots)
    payload["assignment_consistent"] = consistent
    lines = [" ".join(f"{x:>6d}" for x in row) for row in Q.entries]
    lines.append("eigenvalues: " + ", ".join(payload["roots"]))
    lines += [f"  {fmt(m)} -> {frac_str(v)}" + (f" (x{n})" if n > 1 else "") for m, v, n in assigned]
    return payload, consistent and not ev.unresolved, lines


def _assign_modules(lam, mu, k):
    """Module of each quotient root: extraction along the ladder prefix ending at mu."""
    ladder = quotient.full_ladder(k)
    if mu not in ladder:
        return []  # odd blocks: roots only
    ladder = ladder[: ladder.index(mu) + 1]
    values = quotient.extract_module_eigenvalues(lam, k, ladder=ladder, verify="none").as_dict()
    return [(m, values[m], n) for m, n in quotient.modules_in_quotient(k, mu).items()]


def cmd_chartable(args, cfg):
    k = _need_k(args)
    if args.verify:
        rep = chartable.verify_table(k, method=args.method)
        lines = [f"{c['module']} | {c['class']}: {c['status']}" for c in rep["cells"]]
        lines.append(json.dumps(rep["summary"]))
        return rep, rep["passed"], lines
    method = {"quotient": "quotient", "spectrum": "spectrum", "both": "auto"}[args.method]
    table = chartable.get_table(k, directory=cfg.cache, method=method)
    fails = table.check_invariants()
    payload = table.to_json()
    payload["invariant_failures"] = fails
    mods, classes = table.modules, table.classes
    lines = ["module \\ class".ljust(18) + "".join(fmt(c).rjust(14) for c in classes)]
    for m in mods:
        lines.append(fmt(m).ljust(18) + "".join(frac_str(table[(m, c)]).rjust(14) for c in classes))
    return payload, not fails, lines


def cmd_ekr(args, cfg):
    k, t = _need_k(args), args.t
    wv = ekr.solve_weights(t, k, cross_check=k <= 6)
    payload = {"weights": wv.to_json()}
    ok = True
    lines = [f"a{fmt(c)} = {frac_str(w)}" for c, w in wv.weights.items()] + [f"d = {frac_str(wv.degree)}"]
    if args.certificate:
        method = "auto" if cfg.mode == "dense" else "lanczos-implicit"
        rep = ekr.hoffman_certificate_check(wv, eigen_method=method)
        payload["certificate"] = rep.to_json()
        ok &= rep.verdict
        lines.append(f"certificate exact: {rep.certificate_residual_zero}; row sums constant: {rep.row_sums_constant}")
        lines.append(f"least eigenvalue + 1 = {rep.psd_margin:.3e} ({rep.eigen_method})")
        lines.append(f"bound {frac_str(rep.bound)} vs family {rep.family_size}: verdict {rep.verdict}")
    if args.spectrum:
        if k > 6:
            raise matchings.ResourceError("exact module spectrum needs k <= 6")
        table = chartable.get_table(k, directory=cfg.cache)
        spec = ekr.module_spectrum(wv, table)
        inside = all(-1 <= v <= wv.degree for v in spec.values())
        payload["module_spectrum"] = [{"module": list(m), "value": frac_str(v)} for m, v in spec.items()]
        payload["spectrum_in_interval"] = inside
        ok &= inside
        lines += [f"{fmt(m):18s} {frac_str(v)}" for m, v in spec.items()]
    if args.mis:
        res = coclique.max_coclique_exact(scheme.build_intersection_graph(k, t),
                                          coclique.SearchConfig(time_limit=args.time_limit))
        payload["mis"] = res.to_json()
        ok &= res.optimal
        lines.append(f"maximum coclique {res.size} (optimal: {res.optimal}, {res.nodes} nodes)")
    return payload, ok, lines


def cmd_coclique(args, cfg):
    k, t = _need_k(args), args.t
    res = coclique.max_coclique_exact(scheme.build_intersection_graph(k, t),
                                      coclique.SearchConfig(time_limit=args.time_limit))
    lines = [f"alpha(N_{t}({2 * k})) = {res.size} (optimal: {res.optimal})"]
    lines += [" ".join(f"{a}-{b}" for a, b in m) for m in res.witness.members]
    return res.to_json(), res.optimal, lines


def cmd_conjectures(args, cfg):
    lo, hi = cfg.k_range or (None, None)
    if args.which == "t3":
        ks = range(lo or 6, (hi or 6) + 1)
        reports = [ekr.conjecture_t3_spectrum_check(k) for k in ks]
        lines = []
        for r in reports:
            lines.append(f"k={r['k']}: d={r['d']} bound={r['bound']} family={r['family_size']} "
                         f"certificate={r['certificate']['certificate_residual_zero']}")
            lines += [f"  {fmt(e['module']):18s} {e['value']}" for e in r["module_eigenvalues"]]
            if "numeric" in r:
                lines.append(f"  numeric range [{r['numeric']['min']:.6f}, {r['numeric']['max']:.6f}]")
        return {"reports": reports}, all(r["passed"] for r in reports), lines
    if args.which == "degree-patterns":
        ks = range(lo or 3, (hi or 5) + 1)
        reports = [ekr.conjecture_degree_patterns(k, chartable.get_table(k, directory=cfg.cache)) for k in ks]
        lines = [f"k={r['k']} i={row['i']} {row['pattern']} {fmt(row['module'])}: {row['table']} vs {row['conjectured']}"
                 for r in reports for row in r["rows"]]
        return {"reports": reports}, all(r["passed"] for r in reports), lines
    ks = range(lo or 12, (hi or 40) + 1)
    rep = ekr.theorem31_inequalities(ks)
    rep["b_squared"] = [ekr.b_squared_trace_check(k) for k in ks if k >= 4]
    ok = rep["passed"] and all(r["holds"] for r in rep["b_squared"])
    lines = [f"k={r['k']}: case1={r['case1']} case2={r['case2_direct']} theta={r['theta[2k-4,2,2]']}"
             for r in rep["rows"]]
    lines.append(f"F(8) = {rep['F8']}; growth inequality fails at n = {rep['F_growth_violations']}")
    return rep, ok, lines


COMMANDS = {
    "enumerate": cmd_enumerate, "classes": cmd_classes, "degrees": cmd_degrees,
    "scheme-check": cmd_scheme_check, "quotient": cmd_quotient, "chartable": cmd_chartable,
    "ekr": cmd_ekr, "coclique": cmd_coclique, "conjectures": cmd_conjectures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--workers", type=int, default=None, help="cap on worker threads")
    common.add_argument("--mode", choices=("dense", "implicit"), default="dense")
    common.add_argument("--cache", default=None, help="character-table cache dir (else $PMSCHEME_CACHE)")

    p = argparse.ArgumentParser(prog="pmscheme", description="Perfect matching association scheme checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common])
    s.add_argument("--k", type=int)
    s.add_argument("--count-only", action="store_true")

    s = sub.add_parser("classes", parents=[common])
    s.add_argument("--k", type=int)
    s.add_argument("--family", help="resolve a symbolic shape such as 2k-4,2,2")

    for name in ("degrees", "scheme-check"):
        sub.add_parser(name, parents=[common]).add_argument("--k", type=int)

    s = sub.add_parser("quotient", parents=[common])
    s.add_argument("--k", type=int)
    s.add_argument("--class", dest="cls")
    s.add_argument("--subgroup")
    s.add_argument("--verify", choices=("none", "sample", "full"), default="sample")
    s.add_argument("--appendix", action="store_true", help="audit the printed quotient diagonals")

    s = sub.add_parser("chartable", parents=[common])
    s.add_argument("--k", type=int)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--method", choices=("quotient", "spectrum", "both"), default="quotient")

    s = sub.add_parser("ekr", parents=[common])
    s.add_argument("--t", type=int, choices=(2, 3), required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--certificate", action="store_true")
    s.add_argument("--spectrum", action="store_true")
    s.add_argument("--mis", action="store_true")
    s.add_argument("--time-limit", type=float, default=None)

    s = sub.add_parser("coclique", parents=[common])
    s.add_argument("--k", type=int)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--time-limit", type=float, default=None)

    s = sub.add_parser("conjectures", parents=[common])
    s.add_argument("--which", choices=("t3", "degree-patterns", "inequalities"), required=True)
    s.add_argument("--k-range", default=None, help="A..B")
    return p


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command, k=getattr(args, "k", None), t=getattr(args, "t", None),
                    mode=args.mode, method=getattr(args, "method", "quotient"),
                    cache=args.cache or os.environ.get("PMSCHEME_CACHE"), json=args.json,
                    workers=args.workers)
    if getattr(args, "k_range", None):
        cfg.k_range = parse_k_range(args.k_range)
    cfg.validate()
    return cfg


def _apply_workers(n):
    if n is None:
        return
    import numba
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        cfg = _config(args)
        _apply_workers(cfg.workers)
        payload, passed, lines = COMMANDS[args.command](args, cfg)
    except ekr.WeightError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return MISMATCH
    except (UsageError, PartitionError, matchings.ResourceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if cfg.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n".join(lines))
    return OK if passed else MISMATCH


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
