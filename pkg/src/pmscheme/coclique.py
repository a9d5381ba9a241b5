"""Exact maximum cocliques of N_t(2k) by bitset branch and bound."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .matchings import MatchingFamily, ResourceError, canonical_family, enumerate_matchings, rank
from .scheme import IntersectionGraph

MAX_VERTICES = 1200


@dataclass
class SearchConfig:
    node_limit: int | None = None
    time_limit: float | None = None
    seed_canonical: bool = True
    fix_root: bool = True  # valid because N_t(2k) is vertex-transitive


@dataclass
class CocliqueResult:
    size: int
    witness: MatchingFamily
    optimal: bool
    nodes: int = 0
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return not self.optimal

    def to_json(self) -> dict:
        return {"size": self.size, "optimal": self.optimal, "partial": self.partial,
                "nodes": self.nodes, "seconds": round(self.seconds, 3),
                "witness": self.witness.to_json(), "notes": self.notes}


class _Limit(Exception):
    pass


def _colour_order(P: int, adj: list):
    """Greedy sequential colouring of the candidate set; returns (vertices, bounds)."""
    order, bounds = [], []
    colour = 0
    while P:
        colour += 1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            P &= ~low
            Q &= ~low & ~adj[v]
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj: list, candidates: int, start: list, lower: int = 0,
               cfg: SearchConfig | None = None):
    """Largest clique containing `start` inside `candidates` (Python-int bitsets)."""
    cfg = cfg or SearchConfig()
    best = [lower, None]
    nodes = [0]
    deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit

    def expand(R, P):
        nodes[0] += 1
        if cfg.node_limit is not None and nodes[0] > cfg.node_limit:
            raise _Limit
        if deadline is not None and (nodes[0] & 1023) == 0 and time.monotonic() > deadline:
            raise _Limit
        order, bounds = _colour_order(P, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + bounds[i] <= best[0]:
                return
            v = order[i]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > best[0]:
                best[0], best[1] = len(R), list(R)
            R.pop()
            P &= ~(1 << v)

    complete = True
    try:
        if candidates:
            expand(list(start), candidates)
        elif len(start) > best[0]:
            best[0], best[1] = len(start), list(start)
    except _Limit:
        complete = False
    return best[0], best[1], complete, nodes[0]


def max_coclique_exact(graph: IntersectionGraph, cfg: SearchConfig | None = None) -> CocliqueResult:
    """Maximum coclique of N_t(2k), i.e. a largest set-wise t-intersecting family.

    Works on the complement: a coclique of N_t is a clique of the
    "intersects" graph.  Vertices are ordered by descending degree in that
    graph, the canonical family is the initial incumbent, and one vertex of
    the canonical family is fixed in the clique by vertex-transitivity.
    """
    cfg = cfg or SearchConfig()
    n = graph.n_vertices
    if n > MAX_VERTICES:
        raise ResourceError(f"{n} vertices exceeds the branch-and-bound guard of {MAX_VERTICES}")
    t0 = time.monotonic()
    k, t = graph.k, graph.t
    members = enumerate_matchings(k).members
    compat = ~graph.adjacency_dense()
    np.fill_diagonal(compat, False)
    # descending degree in the compatibility graph, stable on rank
    order = sorted(range(n), key=lambda i: (-int(compat[i].sum()), i))
    pos = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        bits = 0
        for u in np.flatnonzero(compat[v]):
            bits |= 1 << pos[int(u)]
        adj.append(bits)

    notes = []
    incumbent = []
    if cfg.seed_canonical:
        incumbent = [pos[rank(m, k)] for m in canonical_family(k, t)]
        notes.append(f"seeded with canonical family of size {len(incumbent)}")
    lower = len(incumbent)  # only strictly larger cliques replace the incumbent
    full = (1 << n) - 1
    if cfg.fix_root:
        root = incumbent[0] if incumbent else 0
        size, clique, complete, nodes = max_clique(adj, adj[root], [root], lower, cfg)
        notes.append("root vertex fixed by vertex-transitivity")
    else:
        size, clique, complete, nodes = max_clique(adj, full, [], lower, cfg)
    if clique is None:
        clique = incumbent
        size = len(incumbent)
    witness = MatchingFamily(k, [members[order[i]] for i in clique])
    return CocliqueResult(size, witness, complete, nodes, time.monotonic() - t0, notes)
