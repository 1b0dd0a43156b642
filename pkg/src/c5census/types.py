"""Coloured reduced graphs ("types") and coloured homomorphisms.

Edge colours are 0 (white, sparse pair), 1/2 (grey, medium) and 1 (black,
dense); vertex colours are 0 or 1.  A coloured homomorphism F -> R may send
several vertices of F to one vertex of R, in which case the vertex colour of
the image decides whether edges (black) or non-edges (white) of F can live
there.

``extract_type`` is heuristic: regularity of a pair is judged by random
half-subsets, and vertex colours come from a greedy search for sparse or
dense subpartitions.  Its diagnostics say so.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .graphcore import Graph, Partition, bits, cycle_graph, induced_subgraph, popcount
from .rng import sample_subsets

HALF = Fraction(1, 2)
EDGE_COLOURS = (Fraction(0), HALF, Fraction(1))
_COL_NAMES = {Fraction(0): "0", HALF: "half", Fraction(1): "1"}
_COL_VALUES = {v: k for k, v in _COL_NAMES.items()}

MAX_PATTERN_VERTICES = 8
MAX_TYPE_VERTICES = 12


class BudgetExceeded(ValueError):
    pass


def _edge_colour(value) -> Fraction:
    if isinstance(value, str):
        if value not in _COL_VALUES:
            raise ValueError(f"unknown edge colour {value!r}")
        return _COL_VALUES[value]
    col = Fraction(value)
    if col not in EDGE_COLOURS:
        raise ValueError(f"edge colours are 0, 1/2 and 1, got {value}")
    return col


@dataclass(frozen=True)
class ColouredGraph:
    k: int
    vertex_colour: tuple[int, ...]
    edge_colour: dict = field(default_factory=dict)  # (i, j) with i < j -> Fraction

    def __post_init__(self):
        vcol = tuple(int(c) for c in self.vertex_colour)
        if len(vcol) != self.k or any(c not in (0, 1) for c in vcol):
            raise ValueError("need one vertex colour in {0, 1} per vertex")
        ecol = {}
        for (i, j), c in self.edge_colour.items():
            if i == j or not (0 <= i < self.k and 0 <= j < self.k):
                raise ValueError(f"bad edge ({i}, {j})")
            ecol[(min(i, j), max(i, j))] = _edge_colour(c)
        object.__setattr__(self, "vertex_colour", vcol)
        object.__setattr__(self, "edge_colour", ecol)

    def colour(self, i: int, j: int) -> Fraction | None:
        """Colour of the edge ij, or None for a non-edge."""
        return self.edge_colour.get((min(i, j), max(i, j)))

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_colour)

    def flipped(self) -> "ColouredGraph":
        """Swap white and black on vertices and edges; grey stays grey."""
        return ColouredGraph(
            self.k,
            tuple(1 - c for c in self.vertex_colour),
            {e: 1 - c for e, c in self.edge_colour.items()},
        )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "vcol": list(self.vertex_colour),
            "edges": [{"i": i, "j": j, "col": _COL_NAMES[c]} for (i, j), c in sorted(self.edge_colour.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ColouredGraph":
        edges = {(int(e["i"]), int(e["j"])): e["col"] for e in d.get("edges", [])}
        return cls(int(d["k"]), tuple(d["vcol"]), edges)

    @classmethod
    def from_json(cls, text: str) -> "ColouredGraph":
        return cls.from_dict(json.loads(text))


def complete_coloured(vertex_colour, edge_colour) -> ColouredGraph:
    """Complete coloured graph with every edge of colour ``edge_colour``."""
    k = len(vertex_colour)
    return ColouredGraph(k, tuple(vertex_colour), {(i, j): edge_colour for i, j in combinations(range(k), 2)})


# -- grey edges ---------------------------------------------------------------

def grey_edges(r: ColouredGraph) -> list[tuple[int, int]]:
    return [e for e, c in sorted(r.edge_colour.items()) if c == HALF]


def find_grey_triangle(r: ColouredGraph) -> tuple[int, int, int] | None:
    nbr = [0] * r.k
    for i, j in grey_edges(r):
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    for i, j in grey_edges(r):
        common = nbr[i] & nbr[j] & ~((2 << j) - 1)
        if common:
            return i, j, (common & -common).bit_length() - 1
    return None


def has_grey_triangle(r: ColouredGraph) -> bool:
    return find_grey_triangle(r) is not None


# -- coloured homomorphisms ------------------------------------------------------

def homomorphism_violations(f: Graph, r: ColouredGraph, h) -> list[str]:
    """Conditions ('a', 'b', 'c') of a coloured homomorphism that ``h`` breaks, with the offending pair."""
    out = []
    if len(h) != f.n or any(not 0 <= x < r.k for x in h):
        return ["map"]
    for u, v in combinations(range(f.n), 2):
        a, b = h[u], h[v]
        col = r.colour(a, b) if a != b else None
        if a != b and col is None:
            out.append(f"a:{u},{v}")
        if f.has_edge(u, v):
            ok = r.vertex_colour[a] == 1 if a == b else col in (HALF, 1)
            if not ok:
                out.append(f"b:{u},{v}")
        else:
            ok = r.vertex_colour[a] == 0 if a == b else col in (0, HALF)
            if not ok:
                out.append(f"c:{u},{v}")
    return out


def _search_order(f: Graph) -> list[int]:
    order, seen = [], 0
    while len(order) < f.n:
        start = max((v for v in range(f.n) if not (seen >> v) & 1), key=f.degree)
        stack = [start]
        seen |= 1 << start
        while stack:
            v = stack.pop()
            order.append(v)
            for u in bits(f.adj[v] & ~seen):
                seen |= 1 << u
                stack.append(u)
    return order


def coloured_homomorphism(f: Graph, r: ColouredGraph) -> tuple[int, ...] | None:
    """A coloured homomorphism F -> R as a tuple ``h[v]``, or None if none exists."""
    if f.n > MAX_PATTERN_VERTICES or r.k > MAX_TYPE_VERTICES:
        raise BudgetExceeded(
            f"coloured homomorphism search is limited to v(F) <= {MAX_PATTERN_VERTICES}, k <= {MAX_TYPE_VERTICES}"
        )
    if f.n == 0:
        return ()
    if r.k == 0:
        return None
    # allowed[is_edge][a] = bitmask of images b compatible with a for that pair type
    allowed = [[0] * r.k for _ in range(2)]
    for a in range(r.k):
        if r.vertex_colour[a] == 1:
            allowed[1][a] |= 1 << a
        else:
            allowed[0][a] |= 1 << a
        for b in range(r.k):
            col = r.colour(a, b) if a != b else None
            if col is None:
                continue
            if col >= HALF:
                allowed[1][a] |= 1 << b
            if col <= HALF:
                allowed[0][a] |= 1 << b

    order = _search_order(f)
    h = [-1] * f.n
    full = (1 << r.k) - 1

    def extend(pos: int) -> bool:
        if pos == f.n:
            return True
        v = order[pos]
        cand = full
        for u in order[:pos]:
            cand &= allowed[1 if f.has_edge(u, v) else 0][h[u]]
            if not cand:
                return False
        for a in bits(cand):
            h[v] = a
            if extend(pos + 1):
                return True
        h[v] = -1
        return False

    return tuple(h) if extend(0) else None


@dataclass(frozen=True)
class SweepRow:
    vertex_colour: tuple[int, int, int]
    witness: tuple[int, ...] | None
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.witness is not None and not self.violations


def grey_triangle_c5_sweep() -> list[SweepRow]:
    """Coloured homomorphisms from C5 into the all-grey triangle under each of the 8 vertex colourings."""
    c5 = cycle_graph(5)
    rows = []
    for vcol in product((0, 1), repeat=3):
        tri = complete_coloured(vcol, HALF)
        h = coloured_homomorphism(c5, tri)
        bad = tuple(homomorphism_violations(c5, tri, h)) if h is not None else ()
        rows.append(SweepRow(vcol, h, bad))
    return rows


# -- type extraction --------------------------------------------------------------

@dataclass(frozen=True)
class TypeParams:
    eps: float = 0.2
    eps_sub: float = 0.3
    d: float = 0.1
    k_sub: int = 2
    mu_proxy: float = 0.25
    trials: int = 64
    seed: int = 0

    def __post_init__(self):
        for name in ("eps", "eps_sub", "d", "mu_proxy"):
            val = getattr(self, name)
            if not 0 < val < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {val}")
        if int(self.k_sub) != self.k_sub or self.k_sub < 2:
            raise ValueError("k_sub must be an integer >= 2")
        if self.trials < 1:
            raise ValueError("trials must be positive")


@dataclass
class TypeResult:
    type: ColouredGraph
    pair_density: dict
    pair_deviation: dict
    failed_pairs: list
    vertex_method: list
    notes: str = "regularity judged by random half-subsets; vertex colours by heuristic subpartition search"

    def as_dict(self) -> dict:
        return {
            "type": self.type.to_dict(),
            "pairs": [
                {
                    "i": i, "j": j,
                    "density": float(self.pair_density[(i, j)]),
                    "max_deviation": float(self.pair_deviation[(i, j)]),
                    "regular": (i, j) not in self.failed_pairs,
                }
                for i, j in sorted(self.pair_density)
            ],
            "vertex_method": self.vertex_method,
            "notes": self.notes,
        }


def _edges_across(g: Graph, a: int, b: int) -> int:
    return sum(popcount(g.adj[v] & b) for v in bits(a))


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << int(v)
    return m


def _density(g: Graph, a: int, b: int) -> Fraction:
    return Fraction(_edges_across(g, a, b), popcount(a) * popcount(b))


def _max_deviation(g: Graph, x: list[int], y: list[int], trials: int, seed: int, stream: int) -> Fraction:
    """Largest |d(A,B) - d(X,Y)| over random half-subsets A of X and B of Y."""
    base = _density(g, _mask(x), _mask(y))
    hx, hy = max(1, len(x) // 2), max(1, len(y) // 2)
    rows_x = sample_subsets(len(x), hx, trials, seed, 2 * stream)
    rows_y = sample_subsets(len(y), hy, trials, seed, 2 * stream + 1)
    worst = Fraction(0)
    for rx, ry in zip(rows_x, rows_y):
        a = _mask(x[i] for i in rx)
        b = _mask(y[i] for i in ry)
        worst = max(worst, abs(_density(g, a, b) - base))
    return worst


def _subpartition(g: Graph, block: list[int], params: TypeParams, dense: bool, stream: int) -> bool:
    """Greedy search for a sparse (or dense) subpartition of G[block] that passes the regularity proxy."""
    k = params.k_sub
    size = max(1, math.ceil(params.mu_proxy * len(block)))
    if k * size > len(block):
        size = len(block) // k
    if size == 0:
        return False
    sub = induced_subgraph(g, block)
    # work on the complement for the dense case so "good" always means few edges
    adj = [(~a & ((1 << sub.n) - 1) & ~(1 << v)) if dense else a for v, a in enumerate(sub.adj)]

    order = sorted(range(sub.n), key=lambda v: popcount(adj[v]))
    parts = [[] for _ in range(k)]
    masks = [0] * k
    for v in order:
        best, best_cost = None, None
        for p in range(k):
            if len(parts[p]) >= size:
                continue
            cost = sum(popcount(adj[v] & masks[q]) for q in range(k) if q != p)
            if best is None or cost < best_cost:
                best, best_cost = p, cost
        if best is None:
            break
        parts[best].append(v)
        masks[best] |= 1 << v

    def cross(p, q):
        return sum(popcount(adj[v] & masks[q]) for v in parts[p])

    def bad_pairs():
        return [(p, q) for p, q in combinations(range(k), 2) if 2 * cross(p, q) >= size * size]

    unused = [v for v in range(sub.n) if not any((m >> v) & 1 for m in masks)]
    for _ in range(4 * sub.n):
        bad = bad_pairs()
        if not bad:
            break
        p, q = bad[0]
        # swap the worst vertex of p for the unused vertex with fewest edges into the other parts
        worst = max(parts[p], key=lambda v: sum(popcount(adj[v] & masks[r]) for r in range(k) if r != p))
        if not unused:
            return False
        others = 0
        for r in range(k):
            if r != p:
                others |= masks[r]
        repl = min(unused, key=lambda v: popcount(adj[v] & others))
        if popcount(adj[repl] & others) >= popcount(adj[worst] & others):
            return False
        parts[p][parts[p].index(worst)] = repl
        masks[p] = (masks[p] & ~(1 << worst)) | (1 << repl)
        unused[unused.index(repl)] = worst
    if bad_pairs():
        return False

    host = Graph(sub.n, tuple(adj))
    for idx, (p, q) in enumerate(combinations(range(k), 2)):
        dev = _max_deviation(host, parts[p], parts[q], params.trials, params.seed, 1_000_000 + stream * 64 + idx)
        if dev > Fraction(str(params.eps_sub)):
            return False
    return True


def extract_type(g: Graph, partition: Partition, params: TypeParams | None = None) -> TypeResult:
    """Coloured reduced graph of G with respect to the clusters of ``partition``."""
    params = params or TypeParams()
    clusters = [list(bits(b)) for b in partition.clusters]
    k = len(clusters)
    if k < 2:
        raise ValueError("need at least two clusters")
    sizes = {len(c) for c in clusters}
    if len(sizes) != 1:
        raise ValueError("clusters must have equal size")
    if min(sizes) < 2 * params.k_sub:
        raise ValueError(f"clusters of size {min(sizes)} are too small for k_sub={params.k_sub}")
    if any(v >= g.n for c in clusters for v in c):
        raise ValueError("partition mentions vertices outside the graph")

    eps, d = Fraction(str(params.eps)), Fraction(str(params.d))
    densities, deviations, failed, ecol = {}, {}, [], {}
    for idx, (i, j) in enumerate(combinations(range(k), 2)):
        dens = _density(g, _mask(clusters[i]), _mask(clusters[j]))
        dev = _max_deviation(g, clusters[i], clusters[j], params.trials, params.seed, idx)
        densities[(i, j)], deviations[(i, j)] = dens, dev
        if dev > eps:
            failed.append((i, j))
            continue
        ecol[(i, j)] = Fraction(0) if dens < d else Fraction(1) if dens > 1 - d else HALF

    vcol, methods = [], []
    for i, c in enumerate(clusters):
        if _subpartition(g, c, params, dense=False, stream=2 * i):
            vcol.append(0)
            methods.append("sparse")
        elif _subpartition(g, c, params, dense=True, stream=2 * i + 1):
            vcol.append(1)
            methods.append("dense")
        else:
            inside = induced_subgraph(g, c)
            vcol.append(0 if 2 * inside.edge_count() < math.comb(len(c), 2) else 1)
            methods.append("fallback")
    return TypeResult(ColouredGraph(k, tuple(vcol), ecol), densities, deviations, failed, methods)
