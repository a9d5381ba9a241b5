"""Character tables of the perfect matching association scheme.

Entries map (module, class) to the eigenvalue of the class matrix on that
module.  Two independent routes build a full table:

* :func:`assemble_full_table` diagonalises a random combination of the dense
  class matrices (k <= 5), names each eigenspace by the Young subgroups that
  fix vectors in it, rounds, and re-verifies the rounded table exactly through
  the orthogonality relations of the scheme;
* :func:`quotient_table` walks every even partition as a subgroup ladder and
  extracts each module's eigenvalue exactly from quotient matrices (k <= 6).
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .closed_forms import CLOSED_FORMS, SHAPES, shape_at
from .exact import frac_str
from .matchings import ResourceError, count_matchings
from .partitions import dominance_geq, even_partitions, fmt, hook_dimension, kostka_number
from .quotient import extract_module_eigenvalues, full_ladder, young_orbits
from .scheme import class_degree, dense_labels

FORMAT = "pmscheme-chartable"
FORMAT_VERSION = 1
ALLOWED_DENOMINATORS = (1, 2, 3, 4)


class TableFormatError(ValueError):
    pass


class TableVersionError(TableFormatError):
    pass


class TableChecksumError(TableFormatError):
    pass


@dataclass
class CharacterTable:
    k: int
    entries: dict = field(default_factory=dict)  # (module, class) -> Fraction
    multiplicities: dict = field(default_factory=dict)  # module -> int
    provenance: dict = field(default_factory=dict)  # (module, class) -> str

    @property
    def modules(self) -> list:
        return [m for m in even_partitions(2 * self.k) if m in self.multiplicities]

    @property
    def classes(self) -> list:
        present = {c for _, c in self.entries}
        return [c for c in even_partitions(2 * self.k) if c in present]

    def __getitem__(self, key):
        return self.entries[key]

    def column(self, cls) -> dict:
        cls = tuple(cls)
        return {m: self.entries[(m, cls)] for m in self.modules if (m, cls) in self.entries}

    def row(self, module) -> dict:
        module = tuple(module)
        return {c: self.entries[(module, c)] for c in self.classes if (module, c) in self.entries}

    def spectrum(self, cls) -> dict:
        """Eigenvalue -> total multiplicity for one class matrix."""
        out: dict = {}
        for m, v in self.column(cls).items():
            out[v] = out.get(v, 0) + self.multiplicities[m]
        return out

    def check_invariants(self) -> list:
        """Exact identities every complete table must satisfy; returns failures."""
        k = self.k
        n = count_matchings(k)
        ident = tuple([2] * k)
        fails = []
        if sum(self.multiplicities.values()) != n:
            fails.append(f"multiplicities sum to {sum(self.multiplicities.values())}, not {n}")
        for m, mult in self.multiplicities.items():
            if mult != hook_dimension(m):
                fails.append(f"multiplicity of {fmt(m)} is {mult}, hook dimension {hook_dimension(m)}")
        for c in self.classes:
            col = self.column(c)
            trace = sum(self.multiplicities[m] * v for m, v in col.items())
            if trace != (n if c == ident else 0):
                fails.append(f"trace identity fails for class {fmt(c)}: {trace}")
            top = col.get((2 * k,))
            if top is not None and top != class_degree(c, k):
                fails.append(f"degree row wrong for class {fmt(c)}")
        for m in self.modules:
            if (m, ident) in self.entries and self.entries[(m, ident)] != 1:
                fails.append(f"identity column not 1 on {fmt(m)}")
        fails += orthogonality_failures(self)
        return fails

    def to_json(self) -> dict:
        payload = {
            "format": FORMAT,
            "version": FORMAT_VERSION,
            "k": self.k,
            "multiplicities": [{"module": list(m), "dimension": str(self.multiplicities[m])} for m in self.modules],
            "entries": [
                {"module": list(m), "class": list(c), "value": frac_str(self.entries[(m, c)]),
                 "provenance": self.provenance.get((m, c), "unknown")}
                for m in self.modules for c in self.classes if (m, c) in self.entries
            ],
        }
        payload["checksum"] = _checksum(payload)
        return payload

    @classmethod
    def from_json(cls, obj: dict) -> "CharacterTable":
        if not isinstance(obj, dict) or obj.get("format") != FORMAT:
            raise TableFormatError("not a character table file")
        if obj.get("version") != FORMAT_VERSION:
            raise TableVersionError(f"unsupported table version {obj.get('version')!r}")
        body = {key: v for key, v in obj.items() if key != "checksum"}
        if obj.get("checksum") != _checksum(body):
            raise TableChecksumError("checksum mismatch")
        try:
            table = cls(int(obj["k"]))
            for row in obj["multiplicities"]:
                table.multiplicities[tuple(row["module"])] = int(row["dimension"])
            for e in obj["entries"]:
                key = (tuple(e["module"]), tuple(e["class"]))
                table.entries[key] = Fraction(e["value"])
                table.provenance[key] = e["provenance"]
        except (KeyError, TypeError, ValueError) as exc:
            raise TableFormatError(f"malformed table: {exc}") from exc
        return table


def _checksum(payload: dict) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def orthogonality_failures(table: CharacterTable) -> list:
    """sum_mu m(mu) theta_a(mu) theta_b(mu) = N d_a [a == b] for all class pairs."""
    n = count_matchings(table.k)
    classes = table.classes
    fails = []
    for i, a in enumerate(classes):
        ca = table.column(a)
        for b in classes[i:]:
            cb = table.column(b)
            if set(ca) != set(cb) or set(ca) != set(table.multiplicities):
                return [f"incomplete table: cannot check orthogonality for {fmt(a)}"]
            s = sum(table.multiplicities[m] * ca[m] * cb[m] for m in ca)
            want = n * class_degree(a, table.k) if a == b else 0
            if s != want:
                fails.append(f"orthogonality fails for classes {fmt(a)}, {fmt(b)}: {s} != {want}")
    return fails


def save_table(path, table: CharacterTable) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(table.to_json(), indent=1))


def load_table(path) -> CharacterTable:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"cannot parse {path}: {exc}") from exc
    return CharacterTable.from_json(obj)


def cache_dir(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get("PMSCHEME_CACHE")
    return Path(env) if env else Path.home() / ".cache" / "pmscheme"


def cache_path(k: int, directory=None) -> Path:
    return cache_dir(directory) / "chartable" / f"k{k}.json"


def _round_entry(x: float, tol: float = 1e-6):
    for q in ALLOWED_DENOMINATORS:
        p = round(x * q)
        if abs(x - p / q) < tol:
            return Fraction(p, q)
    return None


def identify_module(basis: np.ndarray, k: int, orbit_cache: dict) -> tuple:
    """Name an eigenspace by the Young subgroups with fixed vectors inside it.

    The fixed space of Sym(mu) meets module nu in dimension K(nu, mu), which is
    nonzero exactly when nu dominates mu; the module is the unique partition
    dominating every mu that fixes something.
    """
    fixed = {}
    for mu in even_partitions(2 * k):
        part = orbit_cache.get(mu)
        if part is None:
            part = orbit_cache[mu] = young_orbits(k, mu)
        C = np.zeros((basis.shape[0], len(part)))
        C[np.arange(basis.shape[0]), part.cell_of] = 1.0
        C /= np.sqrt(C.sum(axis=0))
        sv = np.linalg.svd(basis.T @ C, compute_uv=False)
        fixed[mu] = int((sv > 1e-8).sum())
    support = [mu for mu, d in fixed.items() if d]
    tops = [nu for nu in support if all(dominance_geq(nu, mu) for mu in support)]
    if len(tops) != 1:
        raise ValueError(f"cannot identify eigenspace (support {support})")
    nu = tops[0]
    for mu, d in fixed.items():
        if d != (kostka_number(nu, mu) if dominance_geq(nu, mu) else 0):
            raise ValueError(f"fixed-space dimension of {fmt(mu)} in {fmt(nu)} is {d}")
    return nu


def assemble_full_table(k: int, seed: int = 0) -> CharacterTable:
    """Complete table by simultaneous diagonalisation of the dense class matrices."""
    if k > 5:
        raise ResourceError("numeric table assembly is guarded at k <= 5")
    labels = dense_labels(k)
    classes = even_partitions(2 * k)
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=len(classes))
    vals, vecs = np.linalg.eigh(coeffs[labels])
    scale = max(1.0, np.abs(vals).max())
    cuts = np.flatnonzero(np.diff(vals) > 1e-6 * scale) + 1
    groups = np.split(np.arange(len(vals)), cuts)
    if len(groups) != len(classes):
        raise ValueError(f"found {len(groups)} eigenspaces, expected {len(classes)}")

    table = CharacterTable(k)
    orbit_cache: dict = {}
    raw = {}
    for g in groups:
        E = vecs[:, g]
        nu = identify_module(E, k, orbit_cache)
        if nu in table.multiplicities:
            raise ValueError(f"module {fmt(nu)} identified twice")
        table.multiplicities[nu] = len(g)
        for ci, lam in enumerate(classes):
            A = (labels == ci).astype(np.float64)
            raw[(nu, lam)] = float(np.trace(E.T @ A @ E)) / len(g)
    exact = True
    for key, x in raw.items():
        r = _round_entry(x)
        if r is None:
            exact = False
            table.entries[key] = Fraction(x).limit_denominator(10**6)
            table.provenance[key] = "numeric"
        else:
            table.entries[key] = r
            table.provenance[key] = "spectrum-matched"
    if exact and table.check_invariants():
        for key in table.provenance:
            table.provenance[key] = "numeric"
    return table


def quotient_table(k: int, verify: str = "none") -> CharacterTable:
    """Complete table from quotient matrices along the full dominance ladder."""
    table = CharacterTable(k)
    ladder = full_ladder(k)
    for m in ladder:
        table.multiplicities[m] = hook_dimension(m)
    for lam in ladder:
        ext = extract_module_eigenvalues(lam, k, ladder=ladder, verify=verify)
        for m, v, _ in ext.entries:
            table.entries[(m, lam)] = Fraction(v)
            table.provenance[(m, lam)] = "quotient-extracted"
    return table


def get_table(k: int, directory=None, method: str = "auto") -> CharacterTable:
    """Load a cached table or build, verify and cache one."""
    path = cache_path(k, directory)
    if path.exists():
        return load_table(path)
    if method == "auto":
        method = "spectrum" if k <= 5 else "quotient"
    table = assemble_full_table(k) if method == "spectrum" else quotient_table(k)
    if not table.check_invariants():
        save_table(path, table)
    return table


def _grid_cells(k: int):
    for mod in SHAPES:
        mu = shape_at(mod, k)
        if mu is None:
            continue
        for cls in SHAPES:
            lam = shape_at(cls, k)
            if lam is None:
                continue
            yield CLOSED_FORMS[(mod, cls)], mu, lam


def _raw_value(cf, k):
    try:
        return Fraction(cf.fn(k))
    except (ValueError, ZeroDivisionError):
        return None


def verify_table(k: int, method: str = "quotient") -> dict:
    """Compare printed closed forms with quotient extraction and/or dense spectra.

    Cells below their validity floor are reported "out-of-range" (with whether
    the raw formula happens to agree), never as failures.
    """
    if method not in ("quotient", "spectrum", "both"):
        raise ValueError(f"unknown method {method!r}")
    cells = {}
    for cf, mu, lam in _grid_cells(k):
        cells[(mu, lam)] = {
            "module": list(mu), "class": list(lam), "formula": cf.text, "source": cf.source,
            "floor": cf.floor(), "printed": cf.evaluate(k), "raw": _raw_value(cf, k),
        }
    if method in ("quotient", "both"):
        if k > 7:
            raise ResourceError("quotient verification is guarded at k <= 7")
        columns = {lam for _, lam in cells}
        extracted = {lam: extract_module_eigenvalues(lam, k).as_dict() for lam in columns}
        for (mu, lam), cell in cells.items():
            cell["quotient"] = extracted[lam].get(mu)
    if method in ("spectrum", "both"):
        if k > 6:
            raise ResourceError("spectrum verification is guarded at k <= 6")
        labels = dense_labels(k)
        classes = even_partitions(2 * k)
        for lam in {lam for _, lam in cells}:
            A = (labels == classes.index(lam)).astype(np.float32 if k >= 6 else np.float64)
            ev = np.linalg.eigvalsh(A).astype(np.float64)
            col = [(mu, c) for (mu, l), c in cells.items() if l == lam]
            by_value: dict = {}
            for mu, c in col:
                if c["printed"] is not None:
                    by_value.setdefault(c["printed"], []).append(mu)
            tol = 1e-6 if k < 6 else 1e-3
            for value, mus in by_value.items():
                count = int((np.abs(ev - float(value)) < tol).sum())
                need = sum(hook_dimension(m) for m in mus)
                for mu in mus:
                    c = cells[(mu, lam)]
                    c["spectrum_count"] = count
                    c["spectrum_needed"] = need
                    c["spectrum_merged"] = len(mus) > 1
                    c["spectrum_ok"] = count >= need

    out, summary = [], {"pass": 0, "fail": 0, "out-of-range": 0}
    for cell in cells.values():
        if cell["printed"] is None:
            status = "out-of-range"
            if "quotient" in cell and cell["quotient"] is not None and cell["raw"] is not None:
                cell["raw_agrees"] = cell["raw"] == cell["quotient"]
        else:
            ok = True
            if "quotient" in cell:
                ok &= cell["quotient"] == cell["printed"]
            if "spectrum_ok" in cell:
                ok &= cell["spectrum_ok"]
            status = "pass" if ok else "fail"
        cell["status"] = status
        summary[status] += 1
        out.append({key: (frac_str(v) if isinstance(v, Fraction) else v) for key, v in cell.items()})
    return {"k": k, "method": method, "cells": out, "summary": summary, "passed": summary["fail"] == 0}
