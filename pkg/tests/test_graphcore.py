import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from c5census.graphcore import (
    Graph,
    GraphBuilder,
    GraphFormatError,
    Partition,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    edge_rank,
    edge_slots,
    edge_unrank,
    edges_between,
    empty_graph,
    format_graph,
    format_partition,
    induced_subgraph,
    pair_density,
    parse_graph,
    parse_graphs,
    parse_partition,
    path_graph,
    petersen_graph,
    relabel,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_named_graph_sizes():
    assert complete_graph(6).edge_count() == 15
    assert empty_graph(6).edge_count() == 0
    assert cycle_graph(5).edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert complete_bipartite(3, 4).edge_count() == 12
    p = petersen_graph()
    assert p.n == 10 and p.edge_count() == 15
    assert all(p.degree(v) == 3 for v in range(10))


def test_graph_rejects_asymmetric_or_loops():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_builder_round_trip():
    g = GraphBuilder(4).add_edge(0, 1).add_edge(2, 3).add_edge(1, 2).remove_edge(2, 3).seal()
    assert g.edges() == [(0, 1), (1, 2)]


def test_density_is_exact():
    assert cycle_graph(5).density() == Fraction(1, 2)
    assert complete_graph(4).density() == 1


@given(graphs())
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g
    assert g.edge_count() + complement(g).edge_count() == g.n * (g.n - 1) // 2


@given(graphs(), st.data())
def test_induced_subgraph_keeps_exactly_the_inside_edges(g, data):
    vs = data.draw(st.lists(st.integers(0, max(g.n - 1, 0)), unique=True)) if g.n else []
    sub = induced_subgraph(g, vs)
    order = sorted(vs)
    expected = {(i, j) for i, j in itertools.combinations(range(len(order)), 2) if g.has_edge(order[i], order[j])}
    assert set(sub.edges()) == expected


@given(st.integers(2, 40), st.data())
def test_edge_rank_round_trip(n, data):
    i = data.draw(st.integers(0, n - 2))
    j = data.draw(st.integers(i + 1, n - 1))
    r = edge_rank(n, i, j)
    assert 0 <= r < n * (n - 1) // 2
    assert edge_unrank(n, r) == (i, j)


def test_edge_slots_are_lexicographic():
    assert edge_slots(4) == list(itertools.combinations(range(4), 2))
    assert [edge_rank(5, i, j) for i, j in edge_slots(5)] == list(range(10))


@given(graphs())
def test_text_format_round_trip(g):
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text


def test_text_format_is_canonical():
    g = Graph.from_edges(4, [(2, 3), (1, 0)])
    assert format_graph(g) == "4 2\n0 1\n2 3\n"


def test_parse_several_graphs_with_comments():
    text = "# two graphs\n3 1\n0 1\n\n2 0\n"
    gs = parse_graphs(text)
    assert [g.n for g in gs] == [3, 2]
    assert gs[0].edges() == [(0, 1)]


@pytest.mark.parametrize("bad", ["3 4\n0 1\n0 2\n1 2\n0 1\n", "3 1\n0 3\n", "x y\n", "3 2\n0 1\n", "3 1\n1 1\n"])
def test_parse_rejects_malformed_input(bad):
    with pytest.raises(GraphFormatError):
        parse_graphs(bad)


def test_partition_round_trip_and_blank_exceptional_line():
    p = parse_partition("\n0 1 2\n3 4 5\n")
    assert p.exceptional == 0
    assert [sorted(bin(c).count("1") for c in p.clusters)] == [[3, 3]]
    assert parse_partition(format_partition(p)) == p
    q = Partition.from_lists([6], [0, 1, 2], [3, 4, 5])
    assert parse_partition(format_partition(q)) == q


def test_partition_rejects_overlap():
    with pytest.raises(ValueError):
        Partition.from_lists([], [0, 1], [1, 2])


def test_pair_density_and_edges_between():
    g = complete_bipartite(2, 3)
    assert edges_between(g, [0, 1], [2, 3, 4]) == 6
    assert pair_density(g, [0, 1], [2, 3, 4]) == 1
    assert pair_density(g, [0], [1]) == 0
    with pytest.raises(ValueError):
        pair_density(g, [], [1])
    with pytest.raises(ValueError):
        pair_density(g, [0, 1], [1, 2])


def test_disjoint_union_and_relabel():
    g = disjoint_union(complete_graph(2), complete_graph(3))
    assert g.n == 5 and g.edges() == [(0, 1), (2, 3), (2, 4), (3, 4)]
    h = relabel(path_graph(3), [2, 0, 1])
    assert h.edge_count() == 2


def test_large_graphs_use_python_ints():
    g = complete_graph(120)
    assert g.edge_count() == 120 * 119 // 2
    assert g.degree(119) == 119
