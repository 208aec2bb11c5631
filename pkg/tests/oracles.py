"""Slow independent reference implementations used only by the tests."""
from __future__ import annotations

from collections import Counter
from itertools import combinations

import networkx as nx
import numpy as np

from cgpetersen.exchange import phi_forward
from cgpetersen.graph import Cycle, CyclePair, Graph, enumerate_unions


def _closed_walk(edges) -> tuple[str, ...]:
    adj: dict[str, list[str]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    walk, prev = [start], None
    cur = start
    while True:
        nxt = next(w for w in adj[cur] if w != prev)
        if nxt == start:
            return tuple(walk)
        walk.append(nxt)
        prev, cur = cur, nxt


def two_regular_components(edges) -> list[list[tuple[str, str]]] | None:
    """Components of an edge set if every vertex has degree exactly 2."""
    deg = Counter(v for e in edges for v in e)
    if any(d != 2 for d in deg.values()):
        return None
    parent = {v: v for v in deg}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for a, b in edges:
        parent[find(a)] = find(b)
    groups: dict[str, list] = {}
    for e in edges:
        groups.setdefault(find(e[0]), []).append(e)
    return list(groups.values())


def subset_oracle(g: Graph) -> tuple[set[Cycle], set[CyclePair]]:
    """All cycles and disjoint cycle pairs, by testing every edge subset."""
    edges = [tuple(sorted(e)) for e in g.edges]
    cycles, pairs = set(), set()
    for r in range(3, len(edges) + 1):
        for subset in combinations(edges, r):
            comps = two_regular_components(subset)
            if comps is None:
                continue
            cs = [Cycle(_closed_walk(c)) for c in comps]
            if len(cs) == 1:
                cycles.add(cs[0])
            elif len(cs) == 2:
                pairs.add(CyclePair(*cs))
    return cycles, pairs


def preimage_oracle(g_delta: Graph, e) -> dict:
    """Group every element of Gamma-bar(G_delta) outside the domain test by its image."""
    tri = e.cycle
    out: dict = {}
    for el in enumerate_unions(g_delta):
        comps = [el] if isinstance(el, Cycle) else list(el.components)
        if any(set(tri.edge_set()) <= c.edge_set() for c in comps):
            continue
        out.setdefault(phi_forward(el, e), []).append(el)
    return {k: sorted(v) for k, v in out.items()}


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(tuple(e) for e in g.edges)
    return h


def gauss_linking_integral(p: np.ndarray, q: np.ndarray) -> float:
    """Numerical Gauss linking integral of two closed polygons.

    Uses the exact solid-angle formula for a pair of straight segments
    (Klenin-Langowski), so the result is an integer up to rounding.
    """
    def seg_pairs(poly):
        return [(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))]

    total = 0.0
    for a0, a1 in seg_pairs(p):
        for b0, b1 in seg_pairs(q):
            total += _segment_pair_linking(a0, a1, b0, b1)
    return total


def _segment_pair_linking(a0, a1, b0, b1) -> float:
    r13, r14 = b0 - a0, b1 - a0
    r23, r24 = b0 - a1, b1 - a1
    faces = [(r13, r14, r24), (r14, r24, r23), (r24, r23, r13), (r23, r13, r14)]
    normals = []
    for u, v, _ in faces:
        n = np.cross(u, v)
        norm = np.linalg.norm(n)
        if norm < 1e-15:
            return 0.0
        normals.append(n / norm)
    omega = 0.0
    for i in range(4):
        omega += np.arcsin(np.clip(np.dot(normals[i], normals[(i + 1) % 4]), -1.0, 1.0))
    # Orientation of the standard integrand (r_a - r_b) . (dr_a x dr_b).
    sign = -np.sign(np.dot(np.cross(a1 - a0, b1 - b0), r13))
    return sign * omega / (4 * np.pi)
