"""
Piecewise-linear spatial embeddings of graphs and their crossing data.

An embedding places every vertex at a point of R^3 and draws every edge
as a polyline through optional interior waypoints. Diagrams are taken by
orthogonal projection to the xy-plane, viewed from +z: at a crossing the
strand with larger z passes over.

Projections are never perturbed. Anything non-generic within ``EPS``
(a vertex landing on another strand, overlapping collinear pieces,
coincident crossing points, equal heights at a crossing) raises instead.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .graph import Cycle, CycleUnion, Graph

__all__ = [
    "EPS",
    "EmbeddingError",
    "DegenerateProjectionError",
    "InvalidEmbeddingError",
    "SpatialEmbedding",
    "StrandPoint",
    "Crossing",
    "Diagram",
    "segments",
    "validate",
    "project",
    "extract_subdiagram",
    "random_embedding",
    "rotated",
    "random_rotation",
    "polygon_embedding",
    "load_embedding",
    "dump_embedding",
    "embedding_from_dict",
    "embedding_to_dict",
]

EPS = 1e-9

Point = tuple[float, float, float]
EdgeKey = tuple[str, str]


class EmbeddingError(ValueError):
    pass


class DegenerateProjectionError(EmbeddingError):
    """The xy-projection is not generic; rotate the embedding and retry."""


class InvalidEmbeddingError(EmbeddingError):
    """The embedding is not injective or is otherwise malformed."""


@dataclass(frozen=True)
class SpatialEmbedding:
    graph: Graph
    positions: Mapping[str, Point]
    waypoints: Mapping[EdgeKey, tuple[Point, ...]] = field(default_factory=dict)

    def __post_init__(self):
        missing = set(self.graph.vertices) - set(self.positions)
        if missing:
            raise InvalidEmbeddingError(f"no position for vertices {sorted(missing)}")
        pos = {v: tuple(float(c) for c in self.positions[v]) for v in self.graph.vertices}
        for v, p in pos.items():
            if len(p) != 3 or not all(np.isfinite(p)):
                raise InvalidEmbeddingError(f"bad coordinates for {v!r}: {p}")
        way = {}
        for (a, b), pts in self.waypoints.items():
            if not self.graph.has_edge(a, b):
                raise InvalidEmbeddingError(f"waypoints given for non-edge {a} {b}")
            if (b, a) in way:
                raise InvalidEmbeddingError(f"waypoints for edge {a} {b} given twice")
            pts = tuple(tuple(float(c) for c in p) for p in pts)
            if any(len(p) != 3 or not all(np.isfinite(p)) for p in pts):
                raise InvalidEmbeddingError(f"bad waypoint for edge {a} {b}")
            if pts:
                way[(a, b)] = pts
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "waypoints", way)

    def edge_keys(self) -> list[EdgeKey]:
        """Edges with a fixed orientation (declaration order), sorted."""
        return self.graph.sorted_edges()

    def polyline(self, a: str, b: str) -> np.ndarray:
        """Points of edge ``a b`` from ``a`` to ``b``, endpoints included."""
        if (a, b) in self.waypoints:
            inner = list(self.waypoints[(a, b)])
        elif (b, a) in self.waypoints:
            inner = list(self.waypoints[(b, a)])[::-1]
        else:
            inner = []
        return np.array([self.positions[a], *inner, self.positions[b]], dtype=float)

    def transformed(self, matrix: np.ndarray) -> "SpatialEmbedding":
        m = np.asarray(matrix, dtype=float)
        pos = {v: tuple(m @ np.array(p)) for v, p in self.positions.items()}
        way = {k: tuple(tuple(m @ np.array(p)) for p in pts) for k, pts in self.waypoints.items()}
        return SpatialEmbedding(self.graph, pos, way)


@dataclass(frozen=True)
class StrandPoint:
    """A point on an edge: segment ``seg`` of edge ``edge`` at parameter ``t``."""

    edge: EdgeKey
    seg: int
    t: float


@dataclass(frozen=True)
class Crossing:
    over: StrandPoint
    under: StrandPoint
    point: tuple[float, float]
    # Projected directions of the two strands, each along its edge key's orientation.
    over_dir: tuple[float, float]
    under_dir: tuple[float, float]
    heights: tuple[float, float]

    def sign(self, over_forward: bool = True, under_forward: bool = True) -> int:
        """Right-handed sign once both strand orientations are chosen."""
        do = np.array(self.over_dir) * (1 if over_forward else -1)
        du = np.array(self.under_dir) * (1 if under_forward else -1)
        return 1 if do[0] * du[1] - do[1] * du[0] > 0 else -1


@dataclass(frozen=True)
class _Seg:
    edge: EdgeKey
    index: int
    p: np.ndarray
    q: np.ndarray
    nodes: tuple  # identities of the endpoints, for adjacency tests


def segments(f: SpatialEmbedding) -> list[_Seg]:
    out = []
    for a, b in f.edge_keys():
        pts = f.polyline(a, b)
        n = len(pts) - 1
        for i in range(n):
            start = ("v", a) if i == 0 else ("w", (a, b), i)
            end = ("v", b) if i == n - 1 else ("w", (a, b), i + 1)
            out.append(_Seg((a, b), i, pts[i], pts[i + 1], (start, end)))
    return out


def _cross2(r, s) -> float:
    return float(r[0] * s[1] - r[1] * s[0])


def _segment_distance(p1, q1, p2, q2) -> float:
    """Euclidean distance between two 3D segments."""
    d1, d2, r = q1 - p1, q2 - p2, p1 - p2
    a, e, f = d1 @ d1, d2 @ d2, d2 @ r
    c, b = d1 @ r, d1 @ d2
    denom = a * e - b * b
    s = np.clip((b * f - c * e) / denom, 0.0, 1.0) if denom > EPS * a * e else 0.0
    t = (b * s + f) / e
    if t < 0.0:
        t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
    elif t > 1.0:
        t, s = 1.0, np.clip((b - c) / a, 0.0, 1.0)
    return float(np.linalg.norm((p1 + d1 * s) - (p2 + d2 * t)))


def validate(f: SpatialEmbedding, eps: float = EPS) -> None:
    """Check injectivity: distinct vertices, nonzero segments, separated segments."""
    for (u, p), (v, q) in combinations(f.positions.items(), 2):
        if np.linalg.norm(np.subtract(p, q)) <= eps:
            raise InvalidEmbeddingError(f"vertices {u!r} and {v!r} coincide")
    segs = segments(f)
    for s in segs:
        if np.linalg.norm(s.q - s.p) <= eps:
            raise InvalidEmbeddingError(f"zero-length segment on edge {s.edge}")
    for s1, s2 in combinations(segs, 2):
        shared = set(s1.nodes) & set(s2.nodes)
        if shared:
            # Adjacent pieces may only meet at the shared node: reject fold-backs.
            (node,) = shared
            a = s1.q - s1.p if s1.nodes[0] == node else s1.p - s1.q
            b = s2.q - s2.p if s2.nodes[0] == node else s2.p - s2.q
            cos = (a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))
            if cos >= 1 - eps:
                raise InvalidEmbeddingError(f"edges {s1.edge} and {s2.edge} overlap")
            continue
        if _segment_distance(s1.p, s1.q, s2.p, s2.q) <= eps:
            raise InvalidEmbeddingError(
                f"segments of edges {s1.edge} and {s2.edge} intersect in space")


def _degenerate(s1: _Seg, s2: _Seg, what: str) -> DegenerateProjectionError:
    return DegenerateProjectionError(
        f"non-generic projection between edges {s1.edge} and {s2.edge} ({what}); "
        "rotate the embedding (e.g. with a random rotation) and retry")


def project(f: SpatialEmbedding, eps: float = EPS) -> list[Crossing]:
    """All transverse double points of the xy-projection, sorted."""
    segs = segments(f)
    crossings: list[Crossing] = []
    for s1, s2 in combinations(segs, 2):
        r, s = (s1.q - s1.p)[:2], (s2.q - s2.p)[:2]
        lr, ls = np.hypot(*r), np.hypot(*s)
        if lr <= eps or ls <= eps:
            raise _degenerate(s1, s2, "vertical segment")
        shared = set(s1.nodes) & set(s2.nodes)
        denom = _cross2(r, s)
        if shared:
            if abs(denom) <= eps * lr * ls:
                (node,) = shared
                a = r if s1.nodes[0] == node else -r
                b = s if s2.nodes[0] == node else -s
                if a @ b > 0:
                    raise _degenerate(s1, s2, "adjacent pieces project onto each other")
            continue
        v = (s2.p - s1.p)[:2]
        if abs(denom) <= eps * lr * ls:
            # Parallel in projection: a problem only if the lines overlap.
            if abs(_cross2(v, r)) <= eps * lr * max(1.0, np.hypot(*v)):
                t0 = (v @ r) / (lr * lr)
                t1 = ((s2.q - s1.p)[:2] @ r) / (lr * lr)
                if max(t0, t1) >= -eps and min(t0, t1) <= 1 + eps:
                    raise _degenerate(s1, s2, "collinear overlap")
            continue
        t = _cross2(v, s) / denom
        u = _cross2(v, r) / denom
        if t < -eps or t > 1 + eps or u < -eps or u > 1 + eps:
            continue
        if min(t, 1 - t, u, 1 - u) <= eps:
            raise _degenerate(s1, s2, "a vertex or waypoint projects onto a strand")
        z1 = s1.p[2] + t * (s1.q[2] - s1.p[2])
        z2 = s2.p[2] + u * (s2.q[2] - s2.p[2])
        if abs(z1 - z2) <= eps:
            raise InvalidEmbeddingError(
                f"edges {s1.edge} and {s2.edge} intersect in space")
        pt = s1.p[:2] + t * r
        sp1, sp2 = StrandPoint(s1.edge, s1.index, float(t)), StrandPoint(s2.edge, s2.index, float(u))
        if z1 > z2:
            c = Crossing(sp1, sp2, (float(pt[0]), float(pt[1])), tuple(map(float, r)),
                         tuple(map(float, s)), (float(z1), float(z2)))
        else:
            c = Crossing(sp2, sp1, (float(pt[0]), float(pt[1])), tuple(map(float, s)),
                         tuple(map(float, r)), (float(z2), float(z1)))
        crossings.append(c)
    for c1, c2 in combinations(crossings, 2):
        if np.hypot(c1.point[0] - c2.point[0], c1.point[1] - c2.point[1]) <= eps:
            raise DegenerateProjectionError(
                f"crossing points of {c1.over.edge}/{c1.under.edge} and "
                f"{c2.over.edge}/{c2.under.edge} coincide; rotate and retry")
    crossings.sort(key=lambda c: (c.over.edge, c.over.seg, c.over.t,
                                  c.under.edge, c.under.seg, c.under.t))
    return crossings


@dataclass(frozen=True)
class Diagram:
    """An oriented diagram given by its Gauss code.

    ``components`` lists, for each closed component, the crossing visits
    ``(crossing id, passes over)`` in traversal order; ``signs`` maps each
    crossing id to +1 (right-handed) or -1.
    """

    components: tuple[tuple[tuple[int, bool], ...], ...]
    signs: Mapping[int, int]

    def __post_init__(self):
        counts: dict[int, list[bool]] = {}
        for comp in self.components:
            for cid, over in comp:
                counts.setdefault(cid, []).append(over)
        for cid, overs in counts.items():
            if sorted(overs) != [False, True]:
                raise ValueError(f"crossing {cid} must be visited once over and once under")
        if set(counts) != set(self.signs):
            raise ValueError("signs do not match the crossings of the code")

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    def component_of(self) -> dict[tuple[int, bool], int]:
        return {visit: k for k, comp in enumerate(self.components) for visit in comp}

    def mixed_crossings(self) -> list[int]:
        """Crossings whose two strands lie on different components."""
        where: dict[int, set[int]] = {}
        for k, comp in enumerate(self.components):
            for cid, _ in comp:
                where.setdefault(cid, set()).add(k)
        return sorted(c for c, ks in where.items() if len(ks) == 2)

    def reversed(self, component: int | None = None) -> "Diagram":
        """Reverse one component (or all of them when ``component`` is None)."""
        ks = range(len(self.components)) if component is None else [component]
        comps = [tuple(reversed(c)) if k in ks else c for k, c in enumerate(self.components)]
        flipped: dict[int, int] = {}
        for k, comp in enumerate(self.components):
            for cid, _ in comp:
                flipped[cid] = flipped.get(cid, 0) + (k in ks)
        # A crossing keeps its sign iff both or neither of its strands flip.
        signs = {c: s if flipped[c] % 2 == 0 else -s for c, s in self.signs.items()}
        return Diagram(tuple(comps), signs)

    def swapped(self) -> "Diagram":
        return Diagram(tuple(reversed(self.components)), dict(self.signs))

    def gauss_code(self) -> str:
        """Text form, e.g. ``O1+ U2+ O3+ U1+ O2+ U3+`` with components split by ``|``."""
        parts = []
        for comp in self.components:
            parts.append(" ".join(f"{'O' if o else 'U'}{c}{'+' if self.signs[c] > 0 else '-'}"
                                  for c, o in comp))
        return " | ".join(parts)

    @classmethod
    def from_gauss_code(cls, text: str) -> "Diagram":
        comps, signs = [], {}
        for part in text.split("|"):
            comp = []
            for tok in part.split():
                kind, num, sgn = tok[0].upper(), int(tok[1:-1]), tok[-1]
                if kind not in "OU" or sgn not in "+-":
                    raise ValueError(f"bad Gauss code token {tok!r}")
                comp.append((num, kind == "O"))
                signs[num] = 1 if sgn == "+" else -1
            comps.append(tuple(comp))
        return cls(tuple(comps), signs)


def extract_subdiagram(f: SpatialEmbedding, crossings: Sequence[Crossing],
                       target: CycleUnion) -> Diagram:
    """Diagram of the knot or link that ``f`` restricts to on ``target``.

    Each component is oriented along its cycle's canonical vertex order.
    """
    cycles = [target] if isinstance(target, Cycle) else list(target.components)
    # edge key -> (component, position in cycle, traversed against key orientation)
    placement: dict[EdgeKey, tuple[int, int, bool]] = {}
    keys = set(f.edge_keys())
    nseg = {}
    for k, cyc in enumerate(cycles):
        for i, (a, b) in enumerate(cyc.edge_list()):
            if (a, b) in keys:
                placement[(a, b)] = (k, i, False)
            elif (b, a) in keys:
                placement[(b, a)] = (k, i, True)
            else:
                raise ValueError(f"{a} {b} is not an edge of the embedded graph")
            key = (a, b) if (a, b) in keys else (b, a)
            nseg[key] = len(f.polyline(*key)) - 1

    def locate(sp: StrandPoint):
        k, i, rev = placement[sp.edge]
        if rev:
            return k, (i, nseg[sp.edge] - 1 - sp.seg, 1.0 - sp.t), rev
        return k, (i, sp.seg, sp.t), rev

    visits: list[list[tuple[tuple, int, bool]]] = [[] for _ in cycles]
    signs: dict[int, int] = {}
    cid = 0
    for c in crossings:
        if c.over.edge not in placement or c.under.edge not in placement:
            continue
        cid += 1
        ko, po, ro = locate(c.over)
        ku, pu, ru = locate(c.under)
        visits[ko].append((po, cid, True))
        visits[ku].append((pu, cid, False))
        signs[cid] = c.sign(not ro, not ru)
    comps = tuple(tuple((c, o) for _, c, o in sorted(vs)) for vs in visits)
    return Diagram(comps, signs)


def random_rotation(seed: int) -> np.ndarray:
    from scipy.spatial.transform import Rotation
    return Rotation.random(random_state=seed).as_matrix()


def rotated(f: SpatialEmbedding, seed: int) -> SpatialEmbedding:
    return f.transformed(random_rotation(seed))


def random_embedding(g: Graph, seed: int, max_tries: int = 1000) -> SpatialEmbedding:
    """Straight-line embedding with vertices uniform in the unit cube.

    Redraws (from the same seeded stream) until the embedding is valid and
    its projection generic, so a seed always yields the same embedding.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        coords = rng.random((len(g.vertices), 3))
        f = SpatialEmbedding(g, {v: tuple(map(float, p)) for v, p in zip(g.vertices, coords)})
        try:
            validate(f)
            project(f)
        except EmbeddingError:
            continue
        return f
    raise EmbeddingError(f"no generic embedding found after {max_tries} draws (seed {seed})")


def polygon_embedding(*polygons: Sequence[Sequence[float]], prefix: str = "p") -> SpatialEmbedding:
    """Embed closed polygons as disjoint cycle graphs (vertices ``p0_0``, ``p0_1``, ...)."""
    vertices, edges, positions = [], [], {}
    for k, poly in enumerate(polygons):
        names = [f"{prefix}{k}_{i}" for i in range(len(poly))]
        vertices += names
        edges += [(names[i], names[(i + 1) % len(names)]) for i in range(len(names))]
        positions.update({n: tuple(map(float, p)) for n, p in zip(names, poly)})
    return SpatialEmbedding(Graph.from_edges(vertices, edges), positions)


def embedding_to_dict(f: SpatialEmbedding) -> dict:
    return {
        "graph": {"vertices": list(f.graph.vertices),
                  "edges": [list(e) for e in f.graph.sorted_edges()]},
        "positions": {v: list(f.positions[v]) for v in f.graph.vertices},
        "waypoints": {f"{a} {b}": [list(p) for p in pts]
                      for (a, b), pts in sorted(f.waypoints.items())},
    }


def embedding_from_dict(data: dict) -> SpatialEmbedding:
    """Inverse of :func:`embedding_to_dict`.

    Waypoint keys are ``"a b"`` strings naming an edge; the points run
    from ``a`` to ``b``.
    """
    try:
        gd = data["graph"]
        g = Graph.from_edges(gd["vertices"], [tuple(e) for e in gd["edges"]])
        positions = {v: tuple(p) for v, p in data["positions"].items()}
        waypoints = {}
        for key, pts in data.get("waypoints", {}).items():
            a, b = key.split()
            waypoints[(a, b)] = tuple(tuple(p) for p in pts)
        return SpatialEmbedding(g, positions, waypoints)
    except InvalidEmbeddingError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InvalidEmbeddingError(f"malformed embedding data: {exc}") from exc


def load_embedding(path) -> SpatialEmbedding:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidEmbeddingError(f"{path}: not valid JSON ({exc})") from exc
    return embedding_from_dict(data)


def dump_embedding(f: SpatialEmbedding, path) -> None:
    with open(path, "w") as fh:
        json.dump(embedding_to_dict(f), fh, indent=2)
        fh.write("\n")
