"""
Delta-Y and Y-Delta exchanges, the induced correspondence between cycles
of the two graphs, and pullback of weight maps along it.

For an exchange replacing triangle ``[a b c]`` by a vertex ``x``, a cycle
(or disjoint pair of cycles) of the triangle side that does not use all
three triangle edges is sent to the graph on the Y side by rerouting its
run along the triangle through ``x``: a single triangle edge ``a-b``
becomes ``a-x-b``, and a two-edge run ``a-c-b`` becomes ``a-x-b``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import (Cycle, CyclePair, CycleUnion, Graph, GraphError, WeightMap,
                    enumerate_cycles)

__all__ = [
    "Exchange",
    "ExchangeError",
    "delta_to_y",
    "y_to_delta",
    "apply_sequence",
    "phi_forward",
    "phi_preimage",
    "composed_preimage",
    "pullback_weights",
    "pullback_along",
    "is_isomorphic",
    "find_isomorphism",
    "is_stable",
    "parse_script",
    "run_script",
]


class ExchangeError(GraphError):
    pass


@dataclass(frozen=True)
class Exchange:
    """Delta-Y exchange at ``triangle`` introducing ``new_vertex``."""

    triangle: tuple[str, str, str]
    new_vertex: str

    def __post_init__(self):
        if len(set(self.triangle)) != 3:
            raise ExchangeError(f"triangle needs three distinct vertices: {self.triangle}")
        object.__setattr__(self, "triangle", tuple(self.triangle))

    @property
    def cycle(self) -> Cycle:
        return Cycle(self.triangle)

    def __str__(self) -> str:
        return f"DY {' '.join(self.triangle)} -> {self.new_vertex}"


def _tri_edges(triangle) -> list[frozenset]:
    a, b, c = triangle
    return [frozenset((a, b)), frozenset((b, c)), frozenset((c, a))]


def delta_to_y(g: Graph, e: Exchange) -> Graph:
    tri = _tri_edges(e.triangle)
    missing = [sorted(t) for t in tri if t not in g.edges]
    if missing:
        raise ExchangeError(f"triangle {e.cycle} is not in the graph (missing {missing})")
    if e.new_vertex in g.vertices:
        raise ExchangeError(f"vertex {e.new_vertex!r} already exists")
    edges = (g.edges - set(tri)) | {frozenset((v, e.new_vertex)) for v in e.triangle}
    return Graph(g.vertices + (e.new_vertex,), frozenset(edges))


def y_to_delta(g: Graph, center: str) -> Graph:
    if center not in g.vertices:
        raise ExchangeError(f"no vertex {center!r}")
    nbrs = sorted(g.neighbors(center))
    if len(nbrs) != 3:
        raise ExchangeError(f"{center!r} has degree {len(nbrs)}, not 3")
    new = _tri_edges(nbrs)
    clash = [sorted(t) for t in new if t in g.edges]
    if clash:
        raise ExchangeError(f"Y-Delta at {center!r} would create multi-edges {clash}")
    edges = {ed for ed in g.edges if center not in ed} | set(new)
    return Graph(tuple(v for v in g.vertices if v != center), frozenset(edges))


def apply_sequence(g: Graph, steps: Iterable[Exchange]) -> Graph:
    for step in steps:
        g = delta_to_y(g, step)
    return g


def _forward_cycle(c: Cycle, e: Exchange) -> Cycle:
    tri = set(e.triangle)
    seq = list(c.vertices)
    n = len(seq)
    hits = [i for i in range(n) if seq[i] in tri and seq[(i + 1) % n] in tri]
    if len(hits) == 3:
        raise ExchangeError(f"{c} contains the whole triangle; outside the domain")
    if not hits:
        return c
    if len(hits) == 1:
        i = hits[0]
        return Cycle(tuple(seq[:i + 1] + [e.new_vertex] + seq[i + 1:]))
    # Two consecutive triangle edges a-m-b: the middle vertex is replaced.
    i, j = hits
    mid = (i + 1) % n if (i + 1) % n == j else (j + 1) % n
    seq[mid] = e.new_vertex
    return Cycle(tuple(seq))


def phi_forward(element: CycleUnion, e: Exchange) -> CycleUnion:
    """Image of a cycle or disjoint pair under the exchange correspondence."""
    if isinstance(element, Cycle):
        return _forward_cycle(element, e)
    return CyclePair(_forward_cycle(element.first, e), _forward_cycle(element.second, e))


def _lift(seq: Sequence[str], pos: int, replacement: str | None) -> Cycle:
    seq = list(seq)
    if replacement is None:
        del seq[pos]
    else:
        seq[pos] = replacement
    return Cycle(tuple(seq))


def phi_preimage(element: CycleUnion, e: Exchange) -> list[CycleUnion]:
    """All elements on the triangle side mapped to ``element``; one or two of them."""
    x = e.new_vertex
    comps = [element] if isinstance(element, Cycle) else list(element.components)
    idx = next((i for i, c in enumerate(comps) if x in c), None)
    if idx is None:
        return [element]
    seq = comps[idx].vertices
    pos = seq.index(x)
    a, b = seq[pos - 1], seq[(pos + 1) % len(seq)]
    (c,) = set(e.triangle) - {a, b}
    lifts = [_lift(seq, pos, None)]
    if c not in element.vertex_set:
        lifts.append(_lift(seq, pos, c))
    out = []
    for lifted in lifts:
        parts = comps[:idx] + [lifted] + comps[idx + 1:]
        out.append(parts[0] if len(parts) == 1 else CyclePair(*parts))
    return sorted(out)


def composed_preimage(element: CycleUnion, steps: Sequence[Exchange]) -> list[CycleUnion]:
    """Preimage of ``element`` under the composite correspondence of ``steps``."""
    current = [element]
    for step in reversed(steps):
        current = sorted({p for el in current for p in phi_preimage(el, step)})
    return current


def pullback_weights(omega: WeightMap, e: Exchange) -> WeightMap:
    """Weight map on the Y-side graph: sum of ``omega`` over preimages."""
    gy = delta_to_y(omega.graph, e)
    values = {}
    for cyc in enumerate_cycles(gy):
        values[cyc] = sum(omega[p] for p in phi_preimage(cyc, e))
    return WeightMap(gy, values)


def pullback_along(omega: WeightMap, steps: Iterable[Exchange]) -> WeightMap:
    for step in steps:
        omega = pullback_weights(omega, step)
    return omega


def find_isomorphism(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """A vertex bijection g1 -> g2 preserving adjacency, or None.

    Plain backtracking; candidates are restricted to equal degree and to
    adjacency consistency with the vertices already placed.
    """
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return None
    adj1, adj2 = g1.adjacency(), g2.adjacency()
    if sorted(map(len, adj1.values())) != sorted(map(len, adj2.values())):
        return None
    # Place high-degree vertices first, then neighbours of placed ones.
    order: list[str] = []
    remaining = set(g1.vertices)
    while remaining:
        best = max(sorted(remaining),
                   key=lambda v: (len(adj1[v] & set(order)), len(adj1[v])))
        order.append(best)
        remaining.discard(best)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for cand in sorted(g2.vertices):
            if cand in used or len(adj2[cand]) != len(adj1[v]):
                continue
            if all((mapping[p] in adj2[cand]) == (p in adj1[v]) for p in order[:i]):
                mapping[v] = cand
                used.add(cand)
                if place(i + 1):
                    return True
                del mapping[v]
                used.discard(cand)
        return False

    return dict(mapping) if place(0) else None


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


def _fresh_names(g: Graph, k: int) -> list[str]:
    names, i = [], 0
    while len(names) < k:
        cand = f"_y{i}"
        if cand not in g.vertices:
            names.append(cand)
        i += 1
    return names


def is_stable(g: Graph, triangles: Iterable[Sequence[str]]) -> bool:
    """Whether every same-size proper subset of exchanges gives isomorphic graphs.

    ``triangles`` must be pairwise edge-disjoint 3-cycles of ``g``.
    """
    tris = [tuple(t) for t in triangles]
    for t in tris:
        if not Cycle(t).is_cycle_of(g):
            raise ExchangeError(f"{list(t)} is not a triangle of the graph")
    for s, t in combinations(tris, 2):
        if set(_tri_edges(s)) & set(_tri_edges(t)):
            raise ExchangeError(f"triangles {list(s)} and {list(t)} share an edge")
    names = _fresh_names(g, len(tris))
    for size in range(1, len(tris)):
        results = [apply_sequence(g, [Exchange(tris[i], names[i]) for i in subset])
                   for subset in combinations(range(len(tris)), size)]
        if not all(is_isomorphic(results[0], r) for r in results[1:]):
            return False
    return True


_DY = re.compile(r"^DY\s+(\S+)\s+(\S+)\s+(\S+)\s*->\s*(\S+)$")
_YD = re.compile(r"^YD\s+(\S+)$")


def parse_script(text: str) -> list[tuple[str, object]]:
    """Parse exchange script lines ``DY a b c -> x`` and ``YD x``.

    Returns ``("DY", Exchange)`` / ``("YD", name)`` steps. Blank lines and
    ``#`` comments are skipped.
    """
    steps: list[tuple[str, object]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DY.match(line)
        if m:
            steps.append(("DY", Exchange(m.group(1, 2, 3), m.group(4))))
            continue
        m = _YD.match(line)
        if m:
            steps.append(("YD", m.group(1)))
            continue
        raise ExchangeError(f"line {lineno}: cannot parse {raw!r}")
    return steps


def run_script(g: Graph, steps: Iterable[tuple[str, object]]) -> Graph:
    for kind, arg in steps:
        g = delta_to_y(g, arg) if kind == "DY" else y_to_delta(g, arg)
    return g

