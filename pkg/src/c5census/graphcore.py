"""Small labelled graphs with bitset adjacency.

Vertices are ``0..n-1``; ``adj[v]`` is a Python int whose bit ``u`` is set
iff ``{u, v}`` is an edge.  Vertex sets are plain int bitmasks as well; any
function taking a vertex set also accepts an iterable of labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

MAX_VERTICES = 128


class GraphFormatError(ValueError):
    """Malformed graph or partition text."""


def as_mask(vertices) -> int:
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << int(v)
    return mask


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, row in enumerate(self.adj):
            if row >> self.n or (row >> v) & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency at {{{u},{v}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        b = GraphBuilder(n)
        for u, v in edges:
            b.add_edge(u, v)
        return b.seal()

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(i, j)`` with ``i < j`` in lexicographic order."""
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def density(self) -> Fraction:
        pairs = math.comb(self.n, 2)
        return Fraction(self.edge_count(), pairs) if pairs else Fraction(0)

    def to_array(self) -> np.ndarray:
        """Adjacency rows as an int64 array, for the compiled kernels (n <= 63)."""
        if self.n > 63:
            raise ValueError("compiled kernels support at most 63 vertices")
        return np.array(self.adj, dtype=np.int64)

    def __str__(self) -> str:
        return format_graph(self)


class GraphBuilder:
    """Mutable edge accumulator; ``seal()`` produces an immutable Graph."""

    def __init__(self, n: int):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        self.n = n
        self._adj = [0] * n

    def add_edge(self, u: int, v: int) -> "GraphBuilder":
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"invalid edge ({u}, {v}) for n={self.n}")
        self._adj[u] |= 1 << v
        self._adj[v] |= 1 << u
        return self

    def remove_edge(self, u: int, v: int) -> "GraphBuilder":
        self._adj[u] &= ~(1 << v)
        self._adj[v] &= ~(1 << u)
        return self

    def seal(self) -> Graph:
        return Graph(self.n, tuple(self._adj))


@dataclass(frozen=True)
class Partition:
    """Blocks ``V_0, V_1, ..., V_k`` as bitmasks; ``V_0`` is the exceptional set."""

    blocks: tuple[int, ...]
    equipartition: bool = field(default=False)

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a partition needs at least the exceptional block")
        seen = 0
        for b in self.blocks:
            if b & seen:
                raise ValueError("partition blocks overlap")
            seen |= b
        if self.equipartition and len({popcount(b) for b in self.blocks[1:]}) > 1:
            raise ValueError("equipartition blocks differ in size")

    @classmethod
    def from_lists(cls, exceptional, *blocks, equipartition: bool = False) -> "Partition":
        return cls((as_mask(exceptional),) + tuple(as_mask(b) for b in blocks), equipartition)

    @property
    def exceptional(self) -> int:
        return self.blocks[0]

    @property
    def clusters(self) -> tuple[int, ...]:
        return self.blocks[1:]

    def check_within(self, n: int) -> None:
        if any(b >> n for b in self.blocks):
            raise ValueError(f"partition mentions vertices outside [0, {n})")


def complement(g: Graph) -> Graph:
    full = g.all_vertices
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph induced on ``vertices``, relabelled by increasing original label."""
    mask = as_mask(vertices)
    if mask >> g.n:
        raise ValueError("vertex set not contained in the graph")
    keep = list(bits(mask))
    rows = []
    for v in keep:
        row = g.adj[v]
        rows.append(sum(1 << i for i, u in enumerate(keep) if (row >> u) & 1))
    return Graph(len(keep), tuple(rows))


def edges_between(g: Graph, a, b) -> int:
    b = as_mask(b)
    return sum(popcount(g.adj[v] & b) for v in bits(as_mask(a)))


def pair_density(g: Graph, a, b) -> Fraction:
    """``e(A, B) / (|A| |B|)`` as an exact fraction."""
    a, b = as_mask(a), as_mask(b)
    if not a or not b:
        raise ValueError("pair density needs two nonempty sets")
    if a & b:
        raise ValueError("pair density needs disjoint sets")
    if (a | b) >> g.n:
        raise ValueError("vertex set not contained in the graph")
    return Fraction(edges_between(g, a, b), popcount(a) * popcount(b))


def edge_rank(n: int, i: int, j: int) -> int:
    """Lexicographic index of the pair ``(i, j)``, ``i < j``, among all pairs of ``[n]``."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got ({i}, {j}) with n={n}")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def edge_unrank(n: int, index: int) -> tuple[int, int]:
    total = n * (n - 1) // 2
    if not 0 <= index < total:
        raise ValueError(f"edge index {index} outside 0..{total - 1}")
    i = 0
    row = n - 1
    while index >= row:
        index -= row
        i += 1
        row -= 1
    return i, i + 1 + index


def edge_slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


# -- named graphs -------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- text format ----------------------------------------------------------------

def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{i} {j}" for i, j in edges]
    return "\n".join(lines) + "\n"


def parse_graphs(text: str) -> list[Graph]:
    """Parse one or more graphs in the ``n m`` / ``i j`` format.

    Blocks may be separated by blank lines; the edge count on the header
    determines where each graph ends.
    """
    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.append((lineno, line.split()))
    graphs = []
    pos = 0
    while pos < len(tokens):
        lineno, head = tokens[pos]
        try:
            n, m = (int(x) for x in head)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected header 'n m'") from None
        if not 0 <= n <= MAX_VERTICES or not 0 <= m <= n * (n - 1) // 2:
            raise GraphFormatError(f"line {lineno}: bad header '{n} {m}'")
        b = GraphBuilder(n)
        seen = set()
        for k in range(1, m + 1):
            if pos + k >= len(tokens):
                raise GraphFormatError(f"line {lineno}: header promises {m} edges")
            eline, pair = tokens[pos + k]
            try:
                i, j = (int(x) for x in pair)
            except ValueError:
                raise GraphFormatError(f"line {eline}: expected edge 'i j'") from None
            if not 0 <= i < j < n or (i, j) in seen:
                raise GraphFormatError(f"line {eline}: invalid or repeated edge {i} {j}")
            seen.add((i, j))
            b.add_edge(i, j)
        graphs.append(b.seal())
        pos += m + 1
    return graphs


def parse_graph(text: str) -> Graph:
    graphs = parse_graphs(text)
    if len(graphs) != 1:
        raise GraphFormatError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def read_graph(stream: TextIO) -> Graph:
    return parse_graph(stream.read())


def format_partition(p: Partition) -> str:
    return "\n".join(" ".join(str(v) for v in bits(b)) for b in p.blocks) + "\n"


def parse_partition(text: str) -> Partition:
    """First line is the exceptional set (may be blank), then one block per line."""
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty partition file")
    blocks = []
    for lineno, line in enumerate(lines, 1):
        if lineno > 1 and not line.strip():
            continue
        try:
            blocks.append(as_mask(int(x) for x in line.split()))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected vertex labels") from None
    try:
        return Partition(tuple(blocks))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is ``order[i]`` of ``g``."""
    pos = {v: i for i, v in enumerate(order)}
    return Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])
