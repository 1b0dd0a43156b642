"""Membership tests for the graph classes under study.

All recognizers are exact.  They run on the compiled bitset kernels, so
graphs are limited to 63 vertices; perfect and generalised-split recognition
is further capped because their worst cases grow exponentially.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels as K
from .graphcore import Graph, bits, complement

KERNEL_MAX_N = 63
PERFECT_MAX_N = 32
GENSPLIT_MAX_N = 32
SUBGRAPH_MAX_F = 6


class Tag(str, Enum):
    ALL = "all"
    C5FREE = "c5free"
    PERFECT = "perfect"
    GENSPLIT = "gensplit"
    NO_SUBGRAPH = "nosubgraph"
    CLUSTER = "cluster"


_KERNEL_CODE = {
    Tag.ALL: K.PRED_ALL,
    Tag.C5FREE: K.PRED_C5FREE,
    Tag.PERFECT: K.PRED_PERFECT,
    Tag.GENSPLIT: K.PRED_GENSPLIT,
    Tag.NO_SUBGRAPH: K.PRED_NO_SUBGRAPH,
    Tag.CLUSTER: K.PRED_CLUSTER,
}


def _kernel_adj(g: Graph) -> np.ndarray:
    if g.n > KERNEL_MAX_N:
        raise ValueError(f"recognizers support at most {KERNEL_MAX_N} vertices, got {g.n}")
    return g.to_array()


def find_induced_cycle(g: Graph, length: int) -> tuple[int, ...] | None:
    """Vertices of an induced cycle of the given length, or None."""
    if length < 4:
        raise ValueError("induced cycle length must be at least 4")
    if length > g.n:
        return None
    mask = K.induced_cycle(_kernel_adj(g), g.n, length)
    return tuple(bits(int(mask))) if mask else None


def has_induced_cycle(g: Graph, length: int) -> bool:
    return find_induced_cycle(g, length) is not None


def is_induced_c5_free(g: Graph) -> bool:
    return not has_induced_cycle(g, 5) if g.n >= 5 else True


@dataclass(frozen=True)
class OddHole:
    in_complement: bool
    vertices: tuple[int, ...]


def find_perfect_obstruction(g: Graph) -> OddHole | None:
    """An induced odd hole (length >= 5) of G or of its complement, or None."""
    if g.n > PERFECT_MAX_N:
        raise ValueError(f"perfect-graph recognition is limited to {PERFECT_MAX_N} vertices")
    side, mask = K.perfect_obstruction(_kernel_adj(g), g.n)
    if not mask:
        return None
    return OddHole(bool(side), tuple(bits(int(mask))))


def is_perfect(g: Graph) -> bool:
    return find_perfect_obstruction(g) is None


def find_induced_p3(g: Graph) -> tuple[int, int, int] | None:
    """An induced path ``(a, centre, b)``, or None when G is a cluster graph."""
    if g.n > KERNEL_MAX_N:
        return _find_induced_p3_py(g)
    centre, a, b = K.induced_p3(g.to_array(), g.n, (1 << g.n) - 1)
    return None if centre < 0 else (int(a), int(centre), int(b))


def _find_induced_p3_py(g: Graph) -> tuple[int, int, int] | None:
    for v in range(g.n):
        closed_v = g.adj[v] | (1 << v)
        for u in bits(g.adj[v]):
            closed_u = g.adj[u] | (1 << u)
            if closed_u != closed_v:
                extra = closed_u & ~closed_v
                if extra:
                    return v, u, (extra & -extra).bit_length() - 1
                extra = closed_v & ~closed_u
                return u, v, (extra & -extra).bit_length() - 1
    return None


def is_cluster_graph(g: Graph) -> bool:
    return find_induced_p3(g) is None


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by smallest vertex."""
    remaining = g.all_vertices if within is None else within
    comps = []
    while remaining:
        frontier = remaining & -remaining
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & remaining & ~comp
        comps.append(comp)
        remaining &= ~comp
    return comps


@dataclass(frozen=True)
class SplitWitness:
    """A generalised clique partition of G (or of its complement).

    ``distinguished`` is the block whose connections are unrestricted; the
    remaining ``blocks`` have no edges between each other in the partitioned
    graph.  When ``in_complement`` is set, every block is a clique of the
    complement, i.e. an independent set of G.
    """

    in_complement: bool
    distinguished: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def all_blocks(self) -> list[tuple[int, ...]]:
        return [self.distinguished, *self.blocks]


def generalised_split_witness(g: Graph) -> SplitWitness | None:
    if g.n > GENSPLIT_MAX_N:
        raise ValueError(f"generalised-split recognition is limited to {GENSPLIT_MAX_N} vertices")
    side, k = K.generalised_split(_kernel_adj(g), g.n)
    if k < 0:
        return None
    k = int(k)
    host = complement(g) if side else g
    rest = components(host, host.all_vertices & ~k)
    return SplitWitness(bool(side), tuple(bits(k)), tuple(tuple(bits(c)) for c in rest))


def is_generalised_split(g: Graph) -> bool:
    return generalised_split_witness(g) is not None


def _placement_order(f: Graph) -> np.ndarray:
    """BFS order from a maximum-degree vertex, restarting per component."""
    order: list[int] = []
    seen = 0
    while len(order) < f.n:
        start = max((v for v in range(f.n) if not (seen >> v) & 1), key=f.degree)
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(bits(f.adj[v] & ~seen), key=lambda x: -f.degree(x)):
                seen |= 1 << u
                queue.append(u)
    return np.array(order, dtype=np.int64)


def find_subgraph(g: Graph, f: Graph) -> tuple[int, ...] | None:
    """Edge-preserving injection of F into G (F need not be induced), or None."""
    if f.n > SUBGRAPH_MAX_F:
        raise ValueError(f"pattern graphs are limited to {SUBGRAPH_MAX_F} vertices")
    out = np.zeros(max(f.n, 1), dtype=np.int64)
    if K.subgraph_embedding(_kernel_adj(g), g.n, f.to_array(), _placement_order(f), f.n, out):
        return tuple(int(x) for x in out[: f.n])
    return None


def contains_subgraph(g: Graph, f: Graph) -> bool:
    return find_subgraph(g, f) is not None


@dataclass(frozen=True)
class ClassPredicate:
    tag: Tag
    pattern: Graph | None = None

    def __post_init__(self):
        object.__setattr__(self, "tag", Tag(self.tag))
        if self.tag is Tag.NO_SUBGRAPH:
            if self.pattern is None:
                raise ValueError("the no-subgraph predicate needs a pattern graph")
            if self.pattern.n > SUBGRAPH_MAX_F:
                raise ValueError(f"pattern graphs are limited to {SUBGRAPH_MAX_F} vertices")

    @property
    def name(self) -> str:
        if self.tag is Tag.NO_SUBGRAPH:
            return f"nosubgraph[{self.pattern.n}:{','.join(f'{i}-{j}' for i, j in self.pattern.edges())}]"
        return self.tag.value

    def __call__(self, g: Graph) -> bool:
        return {
            Tag.ALL: lambda: True,
            Tag.C5FREE: lambda: is_induced_c5_free(g),
            Tag.PERFECT: lambda: is_perfect(g),
            Tag.GENSPLIT: lambda: is_generalised_split(g),
            Tag.NO_SUBGRAPH: lambda: not contains_subgraph(g, self.pattern),
            Tag.CLUSTER: lambda: is_cluster_graph(g),
        }[self.tag]()

    def kernel_args(self) -> tuple[int, np.ndarray, np.ndarray, int]:
        """(code, F adjacency, F placement order, v(F)) for the compiled census loop."""
        if self.tag is Tag.NO_SUBGRAPH:
            f = self.pattern
            return _KERNEL_CODE[self.tag], f.to_array(), _placement_order(f), f.n
        empty = np.zeros(1, dtype=np.int64)
        return _KERNEL_CODE[self.tag], empty, empty, 0


ALL_GRAPHS = ClassPredicate(Tag.ALL)
INDUCED_C5_FREE = ClassPredicate(Tag.C5FREE)
PERFECT = ClassPredicate(Tag.PERFECT)
GENERALISED_SPLIT = ClassPredicate(Tag.GENSPLIT)
CLUSTER = ClassPredicate(Tag.CLUSTER)


def no_subgraph(f: Graph) -> ClassPredicate:
    return ClassPredicate(Tag.NO_SUBGRAPH, f)


def predicate_from_name(name: str, pattern: Graph | None = None) -> ClassPredicate:
    aliases = {"c5-free": "c5free", "gen-split": "gensplit", "split": "gensplit", "forb": "nosubgraph"}
    return ClassPredicate(Tag(aliases.get(name, name)), pattern)


__all__ = [
    "ALL_GRAPHS",
    "CLUSTER",
    "GENERALISED_SPLIT",
    "INDUCED_C5_FREE",
    "PERFECT",
    "ClassPredicate",
    "OddHole",
    "SplitWitness",
    "Tag",
    "components",
    "contains_subgraph",
    "find_induced_cycle",
    "find_induced_p3",
    "find_perfect_obstruction",
    "find_subgraph",
    "generalised_split_witness",
    "has_induced_cycle",
    "is_cluster_graph",
    "is_generalised_split",
    "is_induced_c5_free",
    "is_perfect",
    "no_subgraph",
    "predicate_from_name",
]
