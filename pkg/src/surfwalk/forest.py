"""Spanning forest of (k-1)-regular trees inside a surface-group ball.

Phase 1 deletes one down-edge at every type-2 vertex.  Phase 2 walks the
levels upward and, at every vertex still of full degree, deletes the edge
to a convenient neighbour.  The deleted edges form a matching, and the
surviving graph has no cycle: a cycle would have a highest vertex with two
down-edges, and phase 1 removed one of those.

Ties ("choose any of the candidates") are broken by the smallest letter
index.  Vertices at the last two levels cannot have a convenient
neighbour certified inside the ball; those still of full degree are
*deferred* and excluded from the degree claim.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .ball import ABSENT, Ball, convenient_mask
from .errors import CertificationFailure, InsufficientRadius

KEPT, PHASE1, PHASE2 = 0, 1, 2
MARKERS = {KEPT: "kept", PHASE1: "removed-p1", PHASE2: "removed-p2"}


@dataclass(eq=False)
class ForestMask:
    """``phase[v, s]`` is KEPT or the phase that removed edge (v, v*s); stored for both orientations."""

    ball: Ball
    phase: np.ndarray
    deferred: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    @classmethod
    def empty(cls, b: Ball) -> "ForestMask":
        return cls(b, np.zeros(b.adjacency.shape, dtype=np.int8))

    def remove(self, v, s, phase) -> None:
        v = np.atleast_1d(v)
        s = np.atleast_1d(s)
        y = self.ball.adjacency[v, s]
        self.phase[v, s] = phase
        self.phase[y, s ^ 1] = phase

    def restore(self, v, s) -> None:
        self.remove(v, s, KEPT)

    def removed_edges(self, phase=None) -> list:
        """Removed edges as (vertex, letter) using the smaller of the two orientations."""
        adj = self.ball.adjacency
        sel = self.phase != KEPT if phase is None else self.phase == phase
        out = set()
        for v, s in zip(*np.nonzero(sel)):
            y = int(adj[v, s])
            out.add(min((int(v), int(s)), (y, int(s) ^ 1)))
        return sorted(out)

    def degrees(self) -> np.ndarray:
        return ((self.ball.adjacency != ABSENT) & (self.phase == KEPT)).sum(axis=1)

    def dump(self, fh) -> None:
        self.ball.dump(fh, extra=lambda u, v, s: MARKERS[int(self.phase[u, s])])


def build_forest(b: Ball) -> ForestMask:
    if b.radius < 3:
        raise InsufficientRadius(f"radius {b.radius} < 3")
    k = b.k
    adj = b.adjacency
    t = b.types()
    f = ForestMask.empty(b)

    # phase 1: each type-2 vertex drops its down-edge with the smaller letter
    t2 = np.nonzero(t == 2)[0]
    if len(t2):
        nb = adj[t2]
        down = (nb != ABSENT) & (b.level[np.where(nb != ABSENT, nb, 0)] == b.level[t2][:, None] - 1)
        f.remove(t2, np.argmax(down, axis=1), PHASE1)

    # phase 2, level by level
    conv = convenient_mask(b)
    deferred = []
    offsets = b.level_offsets
    for n in range(b.radius):
        ids = np.arange(offsets[n], offsets[n + 1])
        deg = f.degrees()
        full = ids[deg[ids] == k]
        if not len(full):
            continue
        if n >= b.radius - 1:
            deferred.append(full)
            continue
        nb = adj[full]
        ok = (b.level[nb] == n + 1) & conv[nb] & (deg[nb] == k)
        missing = ~ok.any(axis=1)
        if missing.any():
            bad = full[missing]
            raise CertificationFailure(
                f"{len(bad)} full-degree vertices at level {n} have no convenient neighbour",
                detail={"vertices": [int(v) for v in bad[:20]], "words": [b.word(int(v)) for v in bad[:20]]})
        f.remove(full, np.argmax(ok, axis=1), PHASE2)
    f.deferred = np.concatenate(deferred) if deferred else np.zeros(0, dtype=np.int64)
    return f


class UnionFind:
    def __init__(self, n):
        self.parent = np.arange(n)

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


@dataclass
class ForestCertificate:
    degree_ok: bool
    acyclic: bool
    spanning: bool
    matching: bool
    checked_vertices: int
    deferred: int
    components: int
    counterexamples: dict = field(default_factory=dict)
    inconclusive: bool = False

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.acyclic and self.spanning and self.matching

    def to_dict(self) -> dict:
        return {"ok": self.ok, "degree_ok": self.degree_ok, "acyclic": self.acyclic,
                "spanning": self.spanning, "matching": self.matching,
                "checked_vertices": self.checked_vertices, "deferred": self.deferred,
                "components": self.components, "inconclusive": self.inconclusive,
                "counterexamples": self.counterexamples}


def _kept_edges(f: ForestMask):
    u, v, s = f.ball.edges()
    keep = f.phase[u, s] == KEPT
    return u[keep], v[keep], s[keep]


def find_cycle_edge(f: ForestMask):
    """First kept edge (in edge-list order) that closes a cycle, or None."""
    u, v, s = _kept_edges(f)
    uf = UnionFind(f.ball.num_vertices)
    for a, c, letter in zip(u.tolist(), v.tolist(), s.tolist()):
        if not uf.union(a, c):
            return (a, c, letter)
    return None


def count_components(b: Ball, f: ForestMask) -> int:
    u, v, _ = _kept_edges(f)
    n = b.num_vertices
    graph = coo_matrix((np.ones(len(u)), (u, v)), shape=(n, n))
    return int(connected_components(graph, directed=False)[0])


def verify_forest(b: Ball, f: ForestMask) -> ForestCertificate:
    k = b.k
    cex = {}
    deg = f.degrees()
    deferred = np.zeros(b.num_vertices, dtype=bool)
    deferred[f.deferred] = True
    checked = b.interior & ~deferred
    bad_deg = np.nonzero(checked & (deg != k - 1))[0]
    if len(bad_deg):
        cex["degree"] = [[int(v), int(deg[v])] for v in bad_deg[:20]]

    # a finite graph is a forest iff kept edges == vertices - components
    u, _, _ = _kept_edges(f)
    comps = count_components(b, f)
    acyclic = len(u) == b.num_vertices - comps
    if not acyclic:
        cex["cycle_edge"] = list(find_cycle_edge(f))

    isolated = np.nonzero(deg == 0)[0]
    if len(isolated) and b.num_vertices > 1:
        cex["isolated"] = [int(v) for v in isolated[:20]]

    touched = {}
    matching = True
    for ph in (PHASE1, PHASE2):
        per_vertex = (f.phase == ph).sum(axis=1)
        if (per_vertex > 1).any():
            matching = False
            cex[f"phase{ph}_repeat"] = [int(v) for v in np.nonzero(per_vertex > 1)[0][:20]]
        touched[ph] = per_vertex
    both = np.nonzero(touched[PHASE1] + touched[PHASE2] > 1)[0]
    if len(both):
        matching = False
        cex["matching"] = [int(v) for v in both[:20]]

    return ForestCertificate(
        degree_ok=not len(bad_deg), acyclic=acyclic,
        spanning=not len(isolated) or b.num_vertices == 1, matching=matching,
        checked_vertices=int(checked.sum()), deferred=int(deferred.sum()), components=comps,
        counterexamples=cex, inconclusive=not checked.any())
