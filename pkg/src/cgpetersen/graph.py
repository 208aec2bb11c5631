"""
Simple undirected graphs with named vertices, and exhaustive enumeration
of their cycles and of unions of two vertex-disjoint cycles.

Cycles are stored as vertex sequences in a canonical form: the
lexicographically least tuple among all rotations of the sequence and of
its reversal. Vertex names compare as plain strings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Graph",
    "Cycle",
    "CyclePair",
    "GraphError",
    "WeightMap",
    "UnknownCycleError",
    "canonical_sequence",
    "enumerate_cycles",
    "k_cycles",
    "enumerate_disjoint_pairs",
    "enumerate_unions",
    "parse_graph_text",
    "format_graph_text",
]


class GraphError(ValueError):
    """Raised for malformed graphs, cycles or graph text."""


def _edge(a: str, b: str) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph.

    ``vertices`` keeps declaration order (used for printing only);
    ``edges`` is a frozenset of 2-element frozensets.
    """

    vertices: tuple[str, ...]
    edges: frozenset

    def __post_init__(self):
        names = set(self.vertices)
        if len(names) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        for name in self.vertices:
            if not isinstance(name, str) or not name or any(c.isspace() for c in name):
                raise GraphError(f"bad vertex name {name!r}")
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"loop or malformed edge {set(e)!r}")
            if not e <= names:
                raise GraphError(f"edge {sorted(e)} uses an undeclared vertex")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        edge_set = set()
        for a, b in edges:
            if a == b:
                raise GraphError(f"loop at {a!r}")
            e = _edge(a, b)
            if e in edge_set:
                raise GraphError(f"repeated edge {a} {b}")
            edge_set.add(e)
        return cls(tuple(vertices), frozenset(edge_set))

    def has_edge(self, a: str, b: str) -> bool:
        return _edge(a, b) in self.edges

    def neighbors(self, v: str) -> set[str]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def sorted_edges(self) -> list[tuple[str, str]]:
        order = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=order.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        # Labeled equality: vertex declaration order is irrelevant.
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edges))


def canonical_sequence(seq: Iterable[str]) -> tuple[str, ...]:
    """Least rotation/reflection of a cyclic vertex sequence."""
    seq = tuple(seq)
    n = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for i in range(n):
            cand = s[i:] + s[:i]
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True, order=True)
class Cycle:
    """A cycle of a simple graph, held as a canonical vertex sequence."""

    vertices: tuple[str, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError(f"repeated vertex in cycle {self.vertices}")
        object.__setattr__(self, "vertices", canonical_sequence(self.vertices))

    @classmethod
    def of(cls, *names: str) -> "Cycle":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __iter__(self) -> Iterator[str]:
        return iter(self.vertices)

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edge_list(self) -> list[tuple[str, str]]:
        """Consecutive (oriented) vertex pairs along the stored sequence."""
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_set(self) -> frozenset:
        return frozenset(_edge(a, b) for a, b in self.edge_list())

    def is_cycle_of(self, g: Graph) -> bool:
        return all(g.has_edge(a, b) for a, b in self.edge_list())

    def __str__(self) -> str:
        return "[" + " ".join(self.vertices) + "]"


@dataclass(frozen=True, order=True)
class CyclePair:
    """An unordered pair of vertex-disjoint cycles (an element of Gamma^(2))."""

    first: Cycle
    second: Cycle

    def __post_init__(self):
        if self.first.vertex_set & self.second.vertex_set:
            raise GraphError("cycles of a pair must be vertex-disjoint")
        if self.second < self.first:
            a, b = self.second, self.first
            object.__setattr__(self, "first", a)
            object.__setattr__(self, "second", b)

    @property
    def components(self) -> tuple[Cycle, Cycle]:
        return (self.first, self.second)

    @property
    def vertex_set(self) -> frozenset:
        return self.first.vertex_set | self.second.vertex_set

    def edge_set(self) -> frozenset:
        return self.first.edge_set() | self.second.edge_set()

    def __str__(self) -> str:
        return f"{self.first} u {self.second}"


CycleUnion = Union[Cycle, CyclePair]


class UnknownCycleError(KeyError):
    pass


@dataclass(frozen=True)
class WeightMap:
    """A total integer-valued map on the cycles of ``graph``."""

    graph: Graph
    values: Mapping[Cycle, int] = field(repr=False)
    member: object = None

    def __getitem__(self, cycle: Cycle) -> int:
        try:
            return self.values[cycle]
        except KeyError:
            raise UnknownCycleError(f"{cycle} is not a cycle of this graph") from None

    def __len__(self) -> int:
        return len(self.values)

    def items(self):
        return sorted(self.values.items())

    def support(self) -> list[Cycle]:
        return sorted(c for c, w in self.values.items() if w)

    def diff(self, other: "WeightMap") -> list[tuple[Cycle, int | None, int | None]]:
        """Cycles on which the two maps disagree, with both values."""
        keys = sorted(set(self.values) | set(other.values))
        return [(c, self.values.get(c), other.values.get(c)) for c in keys
                if self.values.get(c) != other.values.get(c)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMap):
            return NotImplemented
        return self.graph == other.graph and dict(self.values) == dict(other.values)

    __hash__ = None


def enumerate_cycles(g: Graph) -> list[Cycle]:
    """All cycles of ``g``, canonical and sorted.

    Backtracking from each start vertex through strictly larger vertices
    only; a closed path is kept once by requiring its second vertex to be
    smaller than its last.
    """
    adj = {v: sorted(ns) for v, ns in g.adjacency().items()}
    found: list[Cycle] = []

    for start in sorted(g.vertices):
        path = [start]
        on_path = {start}

        def extend():
            tail = path[-1]
            for nb in adj[tail]:
                if nb <= start or nb in on_path:
                    continue
                path.append(nb)
                on_path.add(nb)
                if len(path) >= 3 and start in adj[nb] and path[1] < nb:
                    found.append(Cycle(tuple(path)))
                extend()
                path.pop()
                on_path.discard(nb)

        extend()
    return sorted(found)


def k_cycles(g: Graph, k: int) -> list[Cycle]:
    if k < 3:
        raise GraphError("k must be at least 3")
    return [c for c in enumerate_cycles(g) if len(c) == k]


def enumerate_disjoint_pairs(g: Graph, cycles: list[Cycle] | None = None) -> list[CyclePair]:
    """All unordered pairs of vertex-disjoint cycles of ``g``, sorted."""
    if cycles is None:
        cycles = enumerate_cycles(g)
    pairs = [CyclePair(a, b) for a, b in combinations(cycles, 2)
             if not (a.vertex_set & b.vertex_set)]
    return sorted(pairs)


def enumerate_unions(g: Graph) -> list[CycleUnion]:
    """Gamma-bar restricted to n <= 2: all cycles followed by all disjoint pairs.

    Raises if ``g`` has three mutually disjoint cycles, since n >= 3 unions
    are outside what this module handles.
    """
    cycles = enumerate_cycles(g)
    pairs = enumerate_disjoint_pairs(g, cycles)
    for p in pairs:
        for c in cycles:
            if not (c.vertex_set & p.vertex_set):
                raise GraphError("graph has three mutually disjoint cycles")
    return [*cycles, *pairs]


def parse_graph_text(text: str) -> Graph:
    """Parse the plain graph format.

    The first non-blank line lists the vertices separated by whitespace;
    every following non-blank line is one edge ``name1 name2``. Lines
    starting with ``#`` are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty graph text")
    vertices = lines[0].split()
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        edges.append((parts[0], parts[1]))
    return Graph.from_edges(vertices, edges)


def format_graph_text(g: Graph) -> str:
    out = [" ".join(g.vertices)]
    out += [f"{a} {b}" for a, b in g.sorted_edges()]
    return "\n".join(out) + "\n"
