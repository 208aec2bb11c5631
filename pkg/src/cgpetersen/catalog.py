"""
Labeled copies of the seven Petersen-family graphs and their weight maps.

Labels follow the exchange sequence used throughout: K6 lives on
``u v w u' v' A`` and each further member adds one vertex by a
Delta-Y exchange at a named triangle::

    K6 --[u v w]->x--> Q7 --[u' v' A]->x'--> Q8
                        Q7 --[u' v' w]->y--> P8 --[u u' A]->z--> P9 --[v v' A]->B--> P10
    P7 --[A x y]->w--> P8

P7 is K_{3,3,1} with parts {u, v, y}, {u', v', x} and apex A; it is
exactly the Y-Delta reduction of P8 at w.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Callable

from .graph import Cycle, Graph, UnknownCycleError, WeightMap, enumerate_cycles
from .exchange import Exchange, delta_to_y

__all__ = [
    "Member",
    "TRIANGLES",
    "EXCHANGES",
    "WeightMap",
    "UnknownCycleError",
    "build",
    "weight_table",
    "weight_rules",
    "classify",
    "evaluate",
    "identify",
    "catalog_dump",
]


class Member(str, Enum):
    K6 = "K6"
    Q7 = "Q7"
    Q8 = "Q8"
    P7 = "P7"
    P8 = "P8"
    P9 = "P9"
    P10 = "P10"

    @classmethod
    def parse(cls, name: str) -> "Member":
        try:
            return cls(name.upper())
        except ValueError:
            raise ValueError(f"unknown family member {name!r}; expected one of "
                             + ", ".join(m.value for m in cls)) from None


K6_VERTICES = ("u", "v", "w", "u'", "v'", "A")

# The named triangles of K6 (Delta_1..Delta_5) and of P7 (Delta_6).
TRIANGLES: dict[int, tuple[str, str, str]] = {
    1: ("u", "v", "w"),
    2: ("u'", "v'", "w"),
    3: ("u", "u'", "A"),
    4: ("v", "v'", "A"),
    5: ("u'", "v'", "A"),
    6: ("A", "x", "y"),
}

# Exchanges in the order used to build the family; the new vertex names
# are the ones the weight tables refer to.
EXCHANGES: dict[int, Exchange] = {
    1: Exchange(TRIANGLES[1], "x"),
    2: Exchange(TRIANGLES[2], "y"),
    3: Exchange(TRIANGLES[3], "z"),
    4: Exchange(TRIANGLES[4], "B"),
    5: Exchange(TRIANGLES[5], "x'"),
    6: Exchange(TRIANGLES[6], "w"),
}


@lru_cache(maxsize=None)
def build(member: Member | str) -> Graph:
    """Canonical labeled graph of a family member."""
    member = Member.parse(member) if isinstance(member, str) else member
    if member is Member.K6:
        return Graph.from_edges(
            K6_VERTICES,
            [(a, b) for i, a in enumerate(K6_VERTICES) for b in K6_VERTICES[i + 1:]],
        )
    if member is Member.Q7:
        return delta_to_y(build(Member.K6), EXCHANGES[1])
    if member is Member.Q8:
        return delta_to_y(build(Member.Q7), EXCHANGES[5])
    if member is Member.P8:
        return delta_to_y(build(Member.Q7), EXCHANGES[2])
    if member is Member.P9:
        return delta_to_y(build(Member.P8), EXCHANGES[3])
    if member is Member.P10:
        return delta_to_y(build(Member.P9), EXCHANGES[4])
    # P7 = K_{3,3,1}
    left, right = ("u", "v", "y"), ("u'", "v'", "x")
    edges = [(a, b) for a in left for b in right]
    edges += [("A", v) for v in left + right]
    return Graph.from_edges(("u", "v", "u'", "v'", "A", "x", "y"), edges)


# A rule is (name, value, predicate on (length, vertex set)). Predicates of
# one member are pairwise exclusive; anything unmatched has weight 0.
Rule = tuple[str, int, Callable[[int, frozenset], bool]]


def _rules_k6() -> list[Rule]:
    return [
        ("G6", 1, lambda k, s: k == 6),
        ("G5", -1, lambda k, s: k == 5),
    ]


def _rules_q7() -> list[Rule]:
    return [
        ("G7", 1, lambda k, s: k == 7),
        ("G6^1", 1, lambda k, s: k == 6 and "x" not in s),
        ("G6^2", -1, lambda k, s: k == 6 and {"x", "u", "v", "w"} <= s),
        ("G5", -1, lambda k, s: k == 5),
    ]


def _rules_q8() -> list[Rule]:
    return [
        ("G8", 1, lambda k, s: k == 8),
        ("G6^1", 1, lambda k, s: k == 6 and not (s & {"x", "x'"})),
        ("G6^2", -1, lambda k, s: k == 6 and bool(s & {"x", "x'"})),
    ]


def _rules_p7() -> list[Rule]:
    return [
        ("G7", 1, lambda k, s: k == 7),
        ("G5", -1, lambda k, s: k == 5),
        ("G6^1", -2, lambda k, s: k == 6 and "A" not in s),
    ]


def _rules_p8() -> list[Rule]:
    return [
        ("G8", 1, lambda k, s: k == 8),
        ("G7^1", 1, lambda k, s: k == 7 and not {"x", "y", "w"} <= s),
        ("G7^2", -1, lambda k, s: k == 7 and "A" not in s),
        ("G6^1", -1, lambda k, s: k == 6 and "w" in s),
        ("G5", -1, lambda k, s: k == 5),
        ("G6^2", -2, lambda k, s: k == 6 and not (s & {"A", "w"})),
    ]


def _rules_p9() -> list[Rule]:
    avv = {"A", "v", "v'"}
    return [
        ("G9", 1, lambda k, s: k == 9),
        ("G8^1", 1, lambda k, s: k == 8 and avv <= s),
        ("G7^1", -1, lambda k, s: k == 7 and not avv <= s),
        ("G6^1", -1, lambda k, s: k == 6 and avv <= s),
        ("G5", -1, lambda k, s: k == 5),
        ("G6^2", -2, lambda k, s: k == 6 and not avv <= s),
    ]


def _rules_p10() -> list[Rule]:
    return [
        ("G9", 1, lambda k, s: k == 9),
        ("G6", -2, lambda k, s: k == 6),
        ("G5", -1, lambda k, s: k == 5),
    ]


_RULES = {
    Member.K6: _rules_k6,
    Member.Q7: _rules_q7,
    Member.Q8: _rules_q8,
    Member.P7: _rules_p7,
    Member.P8: _rules_p8,
    Member.P9: _rules_p9,
    Member.P10: _rules_p10,
}


def weight_rules(member: Member | str) -> list[Rule]:
    member = Member.parse(member) if isinstance(member, str) else member
    return _RULES[member]()


def classify(member: Member | str, cycle: Cycle) -> tuple[str, int]:
    """Name and value of the table rule matching ``cycle`` ("otherwise", 0 if none).

    Raises ``AssertionError`` if two rules match, which would mean the
    table is ill-defined.
    """
    k, s = len(cycle), cycle.vertex_set
    hits = [(name, val) for name, val, pred in weight_rules(member) if pred(k, s)]
    assert len(hits) <= 1, f"cycle {cycle} matches several rules: {hits}"
    return hits[0] if hits else ("otherwise", 0)


@lru_cache(maxsize=None)
def weight_table(member: Member | str) -> WeightMap:
    member = Member.parse(member) if isinstance(member, str) else member
    g = build(member)
    values = {c: classify(member, c)[1] for c in enumerate_cycles(g)}
    return WeightMap(g, values, member)


def evaluate(w: WeightMap, cycle: Cycle) -> int:
    return w[cycle]


def identify(g: Graph) -> Member | None:
    """The member whose labeled graph equals ``g`` exactly, if any."""
    for m in Member:
        if build(m) == g:
            return m
    return None


def catalog_dump(member: Member | str) -> dict:
    """Deterministic machine-readable description of one member."""
    member = Member.parse(member) if isinstance(member, str) else member
    g = build(member)
    w = weight_table(member)
    return {
        "member": member.value,
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.sorted_edges()],
        "weights": [{"cycle": list(c.vertices), "weight": v} for c, v in w.items()],
    }
