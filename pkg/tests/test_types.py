import itertools
import random
from fractions import Fraction

import pytest

from c5census.graphcore import (
    Graph,
    Partition,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
)
from c5census.types import (
    HALF,
    BudgetExceeded,
    ColouredGraph,
    TypeParams,
    coloured_homomorphism,
    complete_coloured,
    extract_type,
    find_grey_triangle,
    grey_edges,
    grey_triangle_c5_sweep,
    has_grey_triangle,
    homomorphism_violations,
)

import oracles as O


naive_ok = O.coloured_hom_ok
naive_exists = O.coloured_hom_exists


def random_instance(rnd, max_f=5, max_k=4):
    fn = rnd.randint(1, max_f)
    f = Graph.from_edges(fn, [e for e in itertools.combinations(range(fn), 2) if rnd.random() < 0.5])
    k = rnd.randint(1, max_k)
    edges = {}
    for e in itertools.combinations(range(k), 2):
        x = rnd.random()
        if x < 0.2:
            continue
        edges[e] = rnd.choice([0, HALF, 1])
    r = ColouredGraph(k, tuple(rnd.randint(0, 1) for _ in range(k)), edges)
    return f, r


def test_single_vertex_targets():
    k2 = complete_graph(2)
    assert coloured_homomorphism(k2, ColouredGraph(1, (1,))) == (0, 0)
    assert coloured_homomorphism(k2, ColouredGraph(1, (0,))) is None


def test_c5_into_grey_triangles():
    c5 = cycle_graph(5)
    black = complete_coloured((1, 1, 0), HALF)
    h = coloured_homomorphism(c5, black)
    assert h is not None and homomorphism_violations(c5, black, h) == []
    white = complete_coloured((0, 0, 1), HALF)
    h = coloured_homomorphism(c5, white)
    assert h is not None and homomorphism_violations(c5, white, h) == []


def test_violations_name_the_condition():
    k2 = complete_graph(2)
    r = ColouredGraph(2, (0, 0), {})
    assert homomorphism_violations(k2, r, (0, 1)) == ["a:0,1", "b:0,1"]
    assert homomorphism_violations(k2, r, (0, 0)) == ["b:0,1"]
    e2 = Graph.from_edges(2, [])
    assert homomorphism_violations(e2, ColouredGraph(1, (1,)), (0, 0)) == ["c:0,1"]


def test_matches_naive_enumeration():
    rnd = random.Random(17)
    for _ in range(300):
        f, r = random_instance(rnd)
        h = coloured_homomorphism(f, r)
        assert (h is not None) == naive_exists(f, r)
        if h is not None:
            assert naive_ok(f, r, h)


def test_complement_duality():
    rnd = random.Random(23)
    for _ in range(200):
        f, r = random_instance(rnd)
        a = coloured_homomorphism(f, r) is not None
        b = coloured_homomorphism(complement(f), r.flipped()) is not None
        assert a == b


def test_budget_limits():
    with pytest.raises(BudgetExceeded):
        coloured_homomorphism(cycle_graph(9), ColouredGraph(1, (0,)))
    with pytest.raises(BudgetExceeded):
        coloured_homomorphism(cycle_graph(5), ColouredGraph(13, (0,) * 13))


def test_sweep_covers_all_colourings():
    rows = grey_triangle_c5_sweep()
    assert sorted(r.vertex_colour for r in rows) == list(itertools.product((0, 1), repeat=3))
    assert all(r.ok for r in rows)
    for row in rows:
        assert naive_ok(cycle_graph(5), complete_coloured(row.vertex_colour, HALF), row.witness)


def test_grey_triangle_examples():
    assert has_grey_triangle(complete_coloured((0, 0, 0), HALF))
    r = ColouredGraph(3, (0, 0, 0), {(0, 1): HALF, (1, 2): HALF, (0, 2): 1})
    assert not has_grey_triangle(r)
    assert grey_edges(r) == [(0, 1), (1, 2)]


def test_grey_triangle_matches_triple_scan():
    rnd = random.Random(4)
    for _ in range(300):
        edges = {e: rnd.choice([0, HALF, 1]) for e in itertools.combinations(range(6), 2) if rnd.random() < 0.8}
        r = ColouredGraph(6, (0,) * 6, edges)
        expected = any(
            all(edges.get(e) == HALF for e in itertools.combinations(t, 2))
            for t in itertools.combinations(range(6), 3)
        )
        assert has_grey_triangle(r) == expected
        t = find_grey_triangle(r)
        if t is not None:
            assert all(edges.get(e) == HALF for e in itertools.combinations(sorted(t), 2))


def test_bipartite_grey_graph_has_no_grey_triangle():
    k = 8
    edges = {(i, j): HALF for i in range(4) for j in range(4, 8)}
    r = ColouredGraph(k, (0,) * k, edges)
    assert len(grey_edges(r)) == k * k // 4
    assert not has_grey_triangle(r)


def test_coloured_graph_validation_and_json():
    with pytest.raises(ValueError):
        ColouredGraph(2, (0, 2))
    with pytest.raises(ValueError):
        ColouredGraph(2, (0, 1), {(0, 1): Fraction(1, 3)})
    with pytest.raises(ValueError):
        ColouredGraph(2, (0, 1), {(0, 0): 1})
    r = ColouredGraph(3, (0, 1, 1), {(1, 0): 1, (1, 2): HALF})
    assert r.to_dict() == {
        "k": 3,
        "vcol": [0, 1, 1],
        "edges": [{"i": 0, "j": 1, "col": "1"}, {"i": 1, "j": 2, "col": "half"}],
    }
    assert ColouredGraph.from_json(r.to_json()) == r


# -- extraction -------------------------------------------------------------------

def test_extract_complete_bipartite():
    res = extract_type(complete_bipartite(4, 4), Partition.from_lists([], [0, 1, 2, 3], [4, 5, 6, 7]))
    assert res.type.edge_colour == {(0, 1): 1}
    assert res.type.vertex_colour == (0, 0)


def test_extract_two_cliques():
    g = disjoint_union(complete_graph(4), complete_graph(4))
    res = extract_type(g, Partition.from_lists([], [0, 1, 2, 3], [4, 5, 6, 7]))
    assert res.type.edge_colour == {(0, 1): 0}
    assert res.type.vertex_colour == (1, 1)


def test_extract_random_halves_is_grey():
    g = O.gnp(40, 0.5, 3)
    part = Partition.from_lists([], range(20), range(20, 40))
    res = extract_type(g, part)
    dens = Fraction(sum(g.has_edge(u, v) for u in range(20) for v in range(20, 40)), 400)
    assert res.pair_density[(0, 1)] == dens
    assert res.type.edge_colour == {(0, 1): HALF}


def test_threshold_is_strict():
    # pair density exactly d is grey, not white
    g = Graph.from_edges(8, [(0, 4), (1, 5)])
    part = Partition.from_lists([], [0, 1, 2, 3], [4, 5, 6, 7])
    res = extract_type(g, part, TypeParams(d=0.125, eps=0.9))
    assert res.pair_density[(0, 1)] == Fraction(1, 8)
    assert res.type.edge_colour[(0, 1)] == HALF


def test_extract_complement_consistency():
    for seed in range(5):
        g = O.gnp(36, 0.3, seed)
        part = Partition.from_lists([], range(12), range(12, 24), range(24, 36))
        a = extract_type(g, part, TypeParams(seed=seed))
        b = extract_type(complement(g), part, TypeParams(seed=seed))
        assert a.failed_pairs == b.failed_pairs
        for e, col in a.type.edge_colour.items():
            assert b.type.edge_colour[e] == 1 - col


def test_extract_reports_failed_pairs():
    # one side complete to half of the other, empty to the rest: far from regular
    g = Graph.from_edges(16, [(u, v) for u in range(8) for v in range(8, 12)])
    part = Partition.from_lists([], range(8), range(8, 16))
    res = extract_type(g, part, TypeParams(eps=0.05))
    assert res.failed_pairs == [(0, 1)]
    assert res.type.edge_colour == {}
    assert res.as_dict()["pairs"][0]["regular"] is False


def test_extract_preconditions():
    g = complete_graph(6)
    with pytest.raises(ValueError):
        extract_type(g, Partition.from_lists([], [0, 1, 2], [3, 4, 5]))  # blocks below 2 * k_sub
    with pytest.raises(ValueError):
        extract_type(g, Partition.from_lists([], [0, 1, 2, 3, 4, 5]))
    with pytest.raises(ValueError):
        extract_type(complete_graph(9), Partition.from_lists([], [0, 1, 2, 3], [4, 5, 6, 7, 8]))


def test_type_params_validation():
    with pytest.raises(ValueError):
        TypeParams(eps=0)
    with pytest.raises(ValueError):
        TypeParams(k_sub=1)
