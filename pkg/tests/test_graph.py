from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cgpetersen.catalog import Member, build
from cgpetersen.graph import (Cycle, CyclePair, Graph, GraphError, UnknownCycleError, WeightMap,
                              canonical_sequence, enumerate_cycles, enumerate_disjoint_pairs,
                              enumerate_unions, format_graph_text, k_cycles, parse_graph_text)

from oracles import subset_oracle

C3 = Graph.from_edges("uvw", [("u", "v"), ("v", "w"), ("w", "u")])


def test_triangle_has_one_cycle():
    assert enumerate_cycles(C3) == [Cycle.of("u", "v", "w")]
    assert k_cycles(C3, 4) == []
    assert enumerate_disjoint_pairs(C3) == []


def test_forest_has_no_cycles():
    g = Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("b", "d")])
    assert enumerate_cycles(g) == []


def test_k6_census():
    cycles = enumerate_cycles(build(Member.K6))
    assert len(cycles) == 197
    assert Counter(map(len, cycles)) == {3: 20, 4: 45, 5: 72, 6: 60}
    pairs = enumerate_disjoint_pairs(build(Member.K6))
    assert len(pairs) == 10
    assert all(len(p.first) == len(p.second) == 3 for p in pairs)


def test_p10_and_q8_lengths():
    p10 = Counter(map(len, enumerate_cycles(build(Member.P10))))
    assert set(p10) == {5, 6, 8, 9}
    assert len(k_cycles(build(Member.P10), 5)) == 12
    assert set(Counter(map(len, enumerate_cycles(build(Member.Q8))))) == {4, 6, 8}
    assert k_cycles(build(Member.Q8), 5) == []
    pairs = enumerate_disjoint_pairs(build(Member.P10))
    assert len(pairs) == 6
    assert all(len(p.first) == len(p.second) == 5 for p in pairs)


def test_k_cycles_rejects_small_k():
    with pytest.raises(GraphError):
        k_cycles(C3, 2)


def test_members_match_subset_oracle(member):
    g = build(member)
    cycles, pairs = subset_oracle(g)
    assert set(enumerate_cycles(g)) == cycles
    assert set(enumerate_disjoint_pairs(g)) == pairs


def test_members_pairs_cover_all_vertices(member):
    g = build(member)
    for p in enumerate_disjoint_pairs(g):
        assert p.vertex_set == set(g.vertices)
        assert not (p.first.vertex_set & p.second.vertex_set)


def test_enumerated_cycles_are_cycles_and_sorted(member):
    g = build(member)
    cycles = enumerate_cycles(g)
    assert cycles == sorted(cycles)
    assert len(set(cycles)) == len(cycles)
    for c in cycles:
        assert c.is_cycle_of(g)
        assert all(g.has_edge(a, b) for a, b in c.edge_list())


def test_three_disjoint_cycles_rejected():
    g = Graph.from_edges(
        [f"{k}{i}" for k in "abc" for i in range(3)],
        [(f"{k}{i}", f"{k}{(i + 1) % 3}") for k in "abc" for i in range(3)])
    with pytest.raises(GraphError):
        enumerate_unions(g)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(3, 7))
    names = [f"n{i}" for i in range(n)]
    possible = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=12))
    return Graph.from_edges(names, edges)


@given(small_graphs())
def test_random_graphs_match_subset_oracle(g):
    cycles, pairs = subset_oracle(g)
    assert set(enumerate_cycles(g)) == cycles
    assert set(enumerate_disjoint_pairs(g)) == pairs


@given(st.permutations(["a", "b", "c", "d", "e", "f"]), st.integers(0, 5), st.booleans())
def test_canonical_form_ignores_rotation_and_reflection(seq, shift, flip):
    moved = seq[shift:] + seq[:shift]
    if flip:
        moved = moved[::-1]
    assert Cycle(tuple(moved)) == Cycle(tuple(seq))
    assert canonical_sequence(Cycle(tuple(seq)).vertices) == Cycle(tuple(seq)).vertices


def test_cycle_validation():
    with pytest.raises(GraphError):
        Cycle.of("a", "b")
    with pytest.raises(GraphError):
        Cycle.of("a", "b", "a")
    with pytest.raises(GraphError):
        CyclePair(Cycle.of("a", "b", "c"), Cycle.of("c", "d", "e"))


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_edges("ab", [("a", "a")])
    with pytest.raises(GraphError):
        Graph.from_edges("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(GraphError):
        Graph.from_edges("ab", [("a", "c")])


def test_graph_text_round_trip(member):
    g = build(member)
    text = format_graph_text(g)
    assert parse_graph_text("# comment\n" + text) == g


def test_graph_text_bad_line():
    with pytest.raises(GraphError):
        parse_graph_text("a b c\na b c\n")


def test_weight_map_unknown_cycle():
    w = WeightMap(C3, {Cycle.of("u", "v", "w"): 4})
    assert w[Cycle.of("w", "v", "u")] == 4
    with pytest.raises(UnknownCycleError):
        w[Cycle.of("u", "v", "z")]
