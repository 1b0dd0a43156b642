"""Generalised split graph constructions of prescribed edge count, and G(n, m).

The constructions are the ones behind the lower bound on the number of
generalised split graphs of density c:

* ``bipartite`` (c <= 1/4): a fixed balanced bipartition, with the m edges
  placed uniformly among the cross pairs.
* ``kpartite`` (1/4 < c <= 1/2): a first part ``V1`` of size ceil(n/2), a part
  ``V2`` of size ``floor(n/2) - k + 2`` and ``k - 2`` singletons, with all edges
  between distinct non-first parts present, plus ``x`` uniform edges between
  ``V1`` and the rest.  ``k`` is the smallest value putting ``x`` in
  ``[n^2/8 - n, n^2/8 + n]``.
* ``high`` (c > 1/2): complement of the low-density construction with
  ``C(n,2) - m`` edges.

Partitions are fixed (first labels form ``V1``), so the counted family omits
the choice of partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .entropy import log2_binomial
from .graphcore import Graph, complement
from .rng import sample_subsets


class Kind(str, Enum):
    BIPARTITE = "bipartite"
    KPARTITE = "kpartite"
    HIGH = "high"
    GNM = "gnm"


class InfeasibleConstruction(ValueError):
    pass


@dataclass(frozen=True)
class SplitConstruction:
    kind: Kind
    n: int
    m: int
    k: int | None = None
    x: int | None = None
    first_part: int = 0
    scaffold_edges: int = 0
    free_slots: int = 0
    free_edges: int = 0
    inner: "SplitConstruction | None" = None

    @property
    def second_part(self) -> int:
        """Size of ``V2`` (k-partite) or of the second side (bipartite)."""
        rest = self.n - self.first_part
        return rest - (self.k - 2) if self.kind is Kind.KPARTITE else rest


def _sides(n: int) -> tuple[int, int]:
    a = (n + 1) // 2
    return a, n - a


def _bipartite_plan(n: int, m: int) -> SplitConstruction:
    a, b = _sides(n)
    if m > a * b:
        raise InfeasibleConstruction(f"{m} edges exceed the {a * b} cross pairs of a {a}+{b} bipartition")
    return SplitConstruction(Kind.BIPARTITE, n, m, first_part=a, free_slots=a * b, free_edges=m)


def _kpartite_plan(n: int, m: int) -> SplitConstruction:
    a, b = _sides(n)
    lo, hi = n * n - 8 * n, n * n + 8 * n  # window for 8x
    for k in range(2, b + 2):
        singles = k - 2
        scaffold = singles * (b - singles) + singles * (singles - 1) // 2
        x = m - scaffold
        if lo <= 8 * x <= hi and 0 <= x <= a * b:
            return SplitConstruction(
                Kind.KPARTITE, n, m, k=k, x=x, first_part=a,
                scaffold_edges=scaffold, free_slots=a * b, free_edges=x,
            )
    raise InfeasibleConstruction(f"no part count k puts the free-edge budget in range for n={n}, m={m}")


def plan_construction(n: int, m: int, kind: Kind | str | None = None) -> SplitConstruction:
    """Resolve the construction used for ``(n, m)``; ``kind=None`` picks it by density."""
    pairs = math.comb(n, 2)
    if not 0 <= m <= pairs:
        raise InfeasibleConstruction(f"m={m} outside 0..{pairs}")
    if kind is None:
        if 2 * m > pairs:
            kind = Kind.HIGH
        elif 4 * m <= pairs:
            kind = Kind.BIPARTITE
        else:
            kind = Kind.KPARTITE
    kind = Kind(kind)
    if kind is Kind.BIPARTITE:
        return _bipartite_plan(n, m)
    if kind is Kind.KPARTITE:
        return _kpartite_plan(n, m)
    if kind is Kind.HIGH:
        if 2 * m <= pairs:
            raise InfeasibleConstruction("the complement construction needs m > C(n,2)/2")
        inner = plan_construction(n, pairs - m)
        return SplitConstruction(
            Kind.HIGH, n, m, k=inner.k, x=inner.x, first_part=inner.first_part,
            scaffold_edges=inner.scaffold_edges, free_slots=inner.free_slots,
            free_edges=inner.free_edges, inner=inner,
        )
    raise InfeasibleConstruction(f"{kind.value} is not a split construction")


def _build(plan: SplitConstruction, chosen: np.ndarray) -> Graph:
    n, a = plan.n, plan.first_part
    b = n - a
    adj = [0] * n

    def link(u, v):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    if plan.kind is Kind.KPARTITE:
        # V2 = labels a .. a+|V2|-1, singletons after it
        v2 = b - (plan.k - 2)
        singles = range(a + v2, n)
        for s in singles:
            for u in range(a, a + v2):
                link(s, u)
            for t in singles:
                if t > s:
                    link(s, t)
    for slot in chosen:
        slot = int(slot)
        link(slot // b, a + slot % b)
    return Graph(n, tuple(adj))


def _sample(plan: SplitConstruction, seed: int, stream: int) -> Graph:
    if plan.kind is Kind.HIGH:
        return complement(_sample(plan.inner, seed, stream))
    chosen = sample_subsets(plan.free_slots, plan.free_edges, 1, seed, stream)[0]
    return _build(plan, chosen)


def bipartite_split_sample(n: int, m: int, seed: int, stream: int = 0) -> Graph:
    return _sample(_bipartite_plan(n, m), seed, stream)


def kpartite_split_sample(n: int, m: int, seed: int, stream: int = 0) -> Graph:
    return _sample(_kpartite_plan(n, m), seed, stream)


def complement_high_sample(n: int, m: int, seed: int, stream: int = 0) -> Graph:
    return _sample(plan_construction(n, m, Kind.HIGH), seed, stream)


def split_sample(n: int, m: int, seed: int, stream: int = 0) -> Graph:
    """Sample from whichever construction matches the density of ``(n, m)``."""
    return _sample(plan_construction(n, m), seed, stream)


def edge_slot_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of every pair of ``[n]`` in lexicographic rank order."""
    u, v = np.triu_indices(n, k=1)
    return u.astype(np.int64), v.astype(np.int64)


def graph_from_slots(n: int, slots) -> Graph:
    su, sv = edge_slot_arrays(n)
    adj = [0] * n
    for s in slots:
        u, v = int(su[s]), int(sv[s])
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def gnm_sample(n: int, m: int, seed: int, stream: int = 0) -> Graph:
    """Uniform graph on ``[n]`` with exactly m edges (partial Fisher-Yates over edge ranks)."""
    pairs = math.comb(n, 2)
    if not 0 <= m <= pairs:
        raise ValueError(f"m={m} outside 0..{pairs}")
    return graph_from_slots(n, sample_subsets(pairs, m, 1, seed, stream)[0])


def sample(kind: Kind | str, n: int, m: int, seed: int, stream: int = 0) -> Graph:
    kind = Kind(kind)
    if kind is Kind.GNM:
        return gnm_sample(n, m, seed, stream)
    return _sample(plan_construction(n, m, kind), seed, stream)


def split_family_log_count(n: int, m: int, kind: Kind | str | None = None) -> float:
    """log2 of the number of distinct graphs the construction for ``(n, m)`` can produce."""
    plan = plan_construction(n, m, kind)
    return log2_binomial(plan.free_slots, plan.free_edges)
