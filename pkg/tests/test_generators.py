import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from c5census.entropy import log2_binomial
from c5census.generators import (
    InfeasibleConstruction,
    Kind,
    bipartite_split_sample,
    complement_high_sample,
    gnm_sample,
    graph_from_slots,
    kpartite_split_sample,
    plan_construction,
    sample,
    split_family_log_count,
    split_sample,
)
from c5census.recognizers import is_generalised_split, is_induced_c5_free, is_perfect
from c5census.rng import bounded_ints, sample_subsets


def test_plan_selection_by_density():
    assert plan_construction(10, 10).kind is Kind.BIPARTITE
    assert plan_construction(10, 15).kind is Kind.KPARTITE
    assert plan_construction(10, 30).kind is Kind.HIGH


def test_bipartite_plan():
    plan = plan_construction(9, 12, "bipartite")
    assert plan.first_part == 5 and plan.free_slots == 20 and plan.free_edges == 12
    with pytest.raises(InfeasibleConstruction):
        plan_construction(6, 10, "bipartite")


def test_kpartite_budget_window():
    for n in (8, 12, 20, 30):
        pairs = math.comb(n, 2)
        for m in range(pairs // 4 + 1, pairs // 2 + 1):
            plan = plan_construction(n, m, "kpartite")
            assert n * n - 8 * n <= 8 * plan.x <= n * n + 8 * n
            assert plan.scaffold_edges + plan.x == m
            assert 0 <= plan.x <= plan.free_slots


def test_high_plan_requires_dense_target():
    with pytest.raises(InfeasibleConstruction):
        plan_construction(10, 20, "high")
    with pytest.raises(InfeasibleConstruction):
        plan_construction(10, 50)


@pytest.mark.parametrize("kind,n,c", [("bipartite", 12, 0.2), ("kpartite", 12, 0.4), ("high", 12, 0.7),
                                      ("kpartite", 20, 0.5), ("high", 21, 0.9)])
def test_samples_have_m_edges_and_lie_in_every_class(kind, n, c):
    m = round(c * math.comb(n, 2))
    for seed in range(30):
        g = sample(kind, n, m, seed)
        assert g.edge_count() == m
        assert is_generalised_split(g) and is_perfect(g) and is_induced_c5_free(g)


def test_named_samplers_agree_with_dispatch():
    assert bipartite_split_sample(10, 9, 4) == sample("bipartite", 10, 9, 4)
    assert kpartite_split_sample(10, 18, 4) == sample("kpartite", 10, 18, 4)
    assert complement_high_sample(10, 30, 4) == sample("high", 10, 30, 4)
    assert split_sample(10, 18, 4) == kpartite_split_sample(10, 18, 4)


def test_same_seed_same_graph_and_streams_differ():
    a = kpartite_split_sample(16, 50, 11)
    assert a == kpartite_split_sample(16, 50, 11)
    assert a != kpartite_split_sample(16, 50, 11, stream=1)
    assert gnm_sample(16, 50, 11) != gnm_sample(16, 50, 12)


def test_samples_do_not_depend_on_worker_count():
    jobs = [(kind, 14, m, seed) for kind, m in (("bipartite", 20), ("kpartite", 35), ("high", 70)) for seed in range(20)]
    serial = [sample(*j) for j in jobs]
    with ThreadPoolExecutor(4) as pool:
        parallel = list(pool.map(lambda j: sample(*j), jobs))
    assert serial == parallel


def test_gnm_sample_edge_count_and_range():
    g = gnm_sample(30, 200, 1)
    assert g.edge_count() == 200
    with pytest.raises(ValueError):
        gnm_sample(5, 11, 0)


def test_gnm_slots_are_roughly_uniform():
    rows = sample_subsets(10, 3, 20000, seed=5)
    counts = np.bincount(rows.ravel(), minlength=10)
    expected = 20000 * 3 / 10
    chi2 = ((counts - expected) ** 2 / expected).sum()
    assert chi2 < 30  # 9 degrees of freedom; p ~ 5e-4


def test_sample_subsets_rows_are_distinct_subsets():
    rows = sample_subsets(50, 20, 200, seed=3, stream=2)
    assert rows.shape == (200, 20)
    assert all(len(set(r)) == 20 and r.min() >= 0 and r.max() < 50 for r in rows)
    assert np.array_equal(rows, sample_subsets(50, 20, 200, seed=3, stream=2))


def test_sample_subsets_edge_cases():
    assert sample_subsets(5, 0, 3, 1).shape == (3, 0)
    assert sorted(sample_subsets(5, 5, 1, 1)[0]) == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        sample_subsets(3, 4, 1, 0)


def test_bounded_ints():
    xs = bounded_ints(7, 5000, seed=2)
    assert min(xs) == 0 and max(xs) == 6
    assert xs == bounded_ints(7, 5000, seed=2)


def test_graph_from_slots_uses_lexicographic_ranks():
    g = graph_from_slots(4, [0, 5])
    assert g.edges() == [(0, 1), (2, 3)]


def test_split_family_log_count():
    plan = plan_construction(12, 20)
    assert split_family_log_count(12, 20) == log2_binomial(plan.free_slots, plan.free_edges)
    assert split_family_log_count(12, 60) == split_family_log_count(12, 66 - 60)


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 24), st.floats(0.05, 0.95), st.integers(0, 2**32))
def test_any_feasible_density_gives_valid_split_sample(n, c, seed):
    m = round(c * math.comb(n, 2))
    try:
        g = split_sample(n, m, seed)
    except InfeasibleConstruction:
        return
    assert g.edge_count() == m
    assert is_generalised_split(g)
