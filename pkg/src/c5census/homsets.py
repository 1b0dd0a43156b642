"""Homogeneous sets and disjoint induced P3 / anti-P3 packings.

``hom(G)`` is the size of a largest clique or independent set.  The packing
routine is a constructive form of the dichotomy "a graph with no homogeneous
set larger than n/6 has n/6 disjoint induced P3s or n/6 disjoint induced
anti-P3s", extended so that it always returns a checkable certificate: a
packing, or a homogeneous set larger than the target.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum

from .generators import graph_from_slots
from .graphcore import Graph, bits, complement, popcount
from .recognizers import components, is_induced_c5_free
from .rng import sample_subsets


# -- cliques -------------------------------------------------------------------

def _colour_order(adj, cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``cand``; returns vertices and their colour bounds."""
    order, bounds = [], []
    uncoloured = cand
    colour = 0
    while uncoloured:
        colour += 1
        free = uncoloured
        while free:
            low = free & -free
            v = low.bit_length() - 1
            uncoloured ^= low
            free &= ~low & ~adj[v]
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(g: Graph, lower: int = 0) -> tuple[int, ...]:
    """A maximum clique of G, by branch and bound with colouring bounds.

    With ``lower > 0`` only cliques larger than ``lower`` are sought; if none
    exists the result is the empty tuple.
    """
    adj = g.adj
    best: list[int] = []
    best_size = lower

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best, best_size
        order, bounds = _colour_order(adj, cand)
        for v, bound in zip(reversed(order), reversed(bounds)):
            if len(clique) + bound <= best_size:
                return
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > best_size:
                best, best_size = list(clique), len(clique)
            clique.pop()
            cand &= ~(1 << v)

    if g.n:
        expand([], g.all_vertices)
    return tuple(sorted(best))


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


class HomKind(str, Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class HomogeneousSet:
    kind: HomKind
    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


def largest_homogeneous_set(g: Graph, lower: int = 0) -> HomogeneousSet | None:
    """A largest clique or independent set (ties go to the clique).

    With ``lower > 0``, returns None when every homogeneous set has size <= lower.
    """
    clique = max_clique(g, lower)
    indep = max_clique(complement(g), max(lower, len(clique)))
    if indep and len(indep) > len(clique):
        return HomogeneousSet(HomKind.INDEPENDENT, indep)
    if clique:
        return HomogeneousSet(HomKind.CLIQUE, clique)
    return None if lower else HomogeneousSet(HomKind.CLIQUE, ())


def hom(g: Graph) -> int:
    if g.n == 0:
        return 0
    return largest_homogeneous_set(g).size


# -- bipartite matching --------------------------------------------------------

def hopcroft_karp(left_adj: list[list[int]], n_right: int) -> list[int]:
    """Maximum matching; returns ``match[u]`` = right partner of left vertex u, or -1."""
    n_left = len(left_adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    inf = n_left + n_right + 1

    while True:
        dist = [inf] * n_left
        queue = deque(u for u in range(n_left) if match_l[u] < 0)
        for u in queue:
            dist[u] = 0
        reachable_free = False
        while queue:
            u = queue.popleft()
            for w in left_adj[u]:
                partner = match_r[w]
                if partner < 0:
                    reachable_free = True
                elif dist[partner] == inf:
                    dist[partner] = dist[u] + 1
                    queue.append(partner)
        if not reachable_free:
            return match_l

        def augment(u: int) -> bool:
            for w in left_adj[u]:
                partner = match_r[w]
                if partner < 0 or (dist[partner] == dist[u] + 1 and augment(partner)):
                    match_l[u], match_r[w] = w, u
                    return True
            dist[u] = inf
            return False

        for u in range(n_left):
            if match_l[u] < 0:
                augment(u)


# -- packing trichotomy --------------------------------------------------------

class Outcome(str, Enum):
    P3_PACKING = "p3_packing"
    ANTI_P3_PACKING = "anti_p3_packing"
    HOMOGENEOUS_SET = "homogeneous_set"


@dataclass
class PackingCertificate:
    """Result of :func:`p3_packing_trichotomy`.

    P3 triples are ``(end, centre, end)``; anti-P3 triples are ``(u, v, w)``
    with ``uv`` the only edge.
    """

    outcome: Outcome
    target: int
    triples: list[tuple[int, int, int]] = field(default_factory=list)
    homogeneous: HomogeneousSet | None = None
    trace: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {"outcome": self.outcome.value, "target": self.target, "trace": self.trace}
        if self.outcome is Outcome.HOMOGENEOUS_SET:
            d["kind"] = self.homogeneous.kind.value
            d["vertices"] = list(self.homogeneous.vertices)
        else:
            d["triples"] = [list(t) for t in self.triples]
        return d


class TrichotomyFailure(RuntimeError):
    """No packing and no homogeneous set above the target (possible only when 6 does not divide n)."""


def packing_target(n: int) -> int:
    return math.ceil(n / 6)


def greedy_p3_family(g: Graph) -> list[tuple[int, int, int]]:
    """Maximal family of disjoint induced P3s, taking the lexicographically first free triple each time."""
    adj = g.adj
    free = g.all_vertices
    family = []
    for a in range(g.n):
        b_range = free & ~((2 << a) - 1)
        while (free >> a) & 1 and b_range:
            low = b_range & -b_range
            b = low.bit_length() - 1
            b_range ^= low
            if not (free >> b) & 1:
                continue
            if (adj[a] >> b) & 1:
                third = (adj[a] ^ adj[b]) & ~(1 << a) & ~(1 << b)
            else:
                third = adj[a] & adj[b]
            third &= free & ~((2 << b) - 1)
            if third:
                c = (third & -third).bit_length() - 1
                free &= ~((1 << a) | (1 << b) | (1 << c))
                family.append(_p3_shape(g, a, b, c))
    return family


def _p3_shape(g: Graph, a: int, b: int, c: int) -> tuple[int, int, int]:
    for centre, x, y in ((a, b, c), (b, a, c), (c, a, b)):
        if g.has_edge(centre, x) and g.has_edge(centre, y):
            return (x, centre, y)
    raise AssertionError("triple does not induce P3")


def p3_packing_trichotomy(g: Graph) -> PackingCertificate:
    n = g.n
    if n < 6:
        raise ValueError("the packing trichotomy needs at least 6 vertices")
    target = packing_target(n)
    family = greedy_p3_family(g)
    trace = {"p3_family": len(family)}
    if len(family) >= target:
        return PackingCertificate(Outcome.P3_PACKING, target, family, trace=trace)

    covered = 0
    for t in family:
        for v in t:
            covered |= 1 << v
    leftover = g.all_vertices & ~covered
    # maximality: the uncovered part has no induced P3, so it is a disjoint union of cliques
    cliques = [tuple(bits(c)) for c in components(g, leftover)]
    trace.update(uncovered=popcount(leftover), cliques=len(cliques))
    biggest = max(cliques, key=len)
    if len(biggest) > target:
        return PackingCertificate(
            Outcome.HOMOGENEOUS_SET, target, homogeneous=HomogeneousSet(HomKind.CLIQUE, biggest), trace=trace
        )
    if len(cliques) > target:
        reps = tuple(sorted(q[0] for q in cliques))
        return PackingCertificate(
            Outcome.HOMOGENEOUS_SET, target, homogeneous=HomogeneousSet(HomKind.INDEPENDENT, reps), trace=trace
        )

    edges: list[tuple[int, int]] = []
    edge_clique: list[int] = []
    spare: list[tuple[int, int]] = []  # (vertex, clique index)
    for idx, q in enumerate(cliques):
        if len(edges) < target:
            take = min(len(q) // 2, target - len(edges))
            for j in range(take):
                edges.append((q[2 * j], q[2 * j + 1]))
                edge_clique.append(idx)
            spare.extend((v, idx) for v in q[2 * take:])
        else:
            spare.extend((v, idx) for v in q)
    xs = spare[: len(edges)]
    left_adj = [[e for e in range(len(edges)) if edge_clique[e] != ci] for _, ci in xs]
    match = hopcroft_karp(left_adj, len(edges))
    triples = [(*edges[e], xs[i][0]) for i, e in enumerate(match) if e >= 0]
    trace.update(edges=len(edges), spare=len(xs), matched=len(triples))
    if len(triples) >= target:
        return PackingCertificate(Outcome.ANTI_P3_PACKING, target, triples, trace=trace)

    trace["fallback"] = "exact_homogeneous_search"
    found = largest_homogeneous_set(g, lower=target)
    if found is None:
        raise TrichotomyFailure(
            f"n={n}: {len(family)} P3s, {len(triples)} anti-P3s, no homogeneous set above {target}"
        )
    return PackingCertificate(Outcome.HOMOGENEOUS_SET, target, homogeneous=found, trace=trace)


def verify_certificate(g: Graph, cert: PackingCertificate, target: int | None = None) -> bool:
    """Re-derive every property claimed by ``cert`` from G alone."""
    if target is None:
        target = packing_target(g.n)
    if cert.target != target:
        return False
    if cert.outcome is Outcome.HOMOGENEOUS_SET:
        hs = cert.homogeneous
        if hs is None or len(set(hs.vertices)) != len(hs.vertices) or len(hs.vertices) <= target:
            return False
        if any(not 0 <= v < g.n for v in hs.vertices):
            return False
        want = hs.kind is HomKind.CLIQUE
        return all(
            g.has_edge(u, v) == want for i, u in enumerate(hs.vertices) for v in hs.vertices[i + 1:]
        )
    if cert.homogeneous is not None or len(cert.triples) < target:
        return False
    seen: set[int] = set()
    for t in cert.triples:
        if len(t) != 3 or any(not 0 <= v < g.n for v in t):
            return False
        if seen.intersection(t) or len(set(t)) != 3:
            return False
        seen.update(t)
        a, b, c = t
        if cert.outcome is Outcome.P3_PACKING:
            ok = g.has_edge(a, b) and g.has_edge(b, c) and not g.has_edge(a, c)
        else:
            ok = g.has_edge(a, b) and not g.has_edge(a, c) and not g.has_edge(b, c)
        if not ok:
            return False
    return True


# -- hom distribution ------------------------------------------------------------

class AcceptanceTooLow(RuntimeError):
    pass


@dataclass
class HomDistribution:
    n: int
    m: int
    samples: int
    seed: int | None
    overall: Counter
    conditioned: Counter

    @property
    def accepted(self) -> int:
        return sum(self.conditioned.values())

    @staticmethod
    def _mean(counter: Counter) -> float:
        total = sum(counter.values())
        return sum(k * v for k, v in counter.items()) / total if total else math.nan

    @property
    def mean_overall(self) -> float:
        return self._mean(self.overall)

    @property
    def mean_conditioned(self) -> float:
        return self._mean(self.conditioned)

    def rows(self) -> list[dict]:
        total = sum(self.overall.values())
        acc = self.accepted
        out = []
        for h in sorted(set(self.overall) | set(self.conditioned)):
            out.append({
                "hom": h,
                "hom_over_n": h / self.n,
                "count_all": self.overall.get(h, 0),
                "frac_all": self.overall.get(h, 0) / total if total else 0.0,
                "count_c5free": self.conditioned.get(h, 0),
                "frac_c5free": self.conditioned.get(h, 0) / acc if acc else 0.0,
            })
        return out


MIN_ACCEPTANCE = 1e-4
HOMDIST_MAX_N = 20


def hom_distribution_experiment(n: int, m: int, samples: int, seed: int) -> HomDistribution:
    """Distribution of hom(G) over uniform G(n, m), overall and among induced-C5-free samples."""
    if n > HOMDIST_MAX_N:
        raise ValueError(f"hom distribution experiment is limited to n <= {HOMDIST_MAX_N}")
    if samples < 1:
        raise ValueError("need at least one sample")
    rows = sample_subsets(math.comb(n, 2), m, samples, seed)
    overall: Counter = Counter()
    conditioned: Counter = Counter()
    for row in rows:
        g = graph_from_slots(n, row)
        h = hom(g)
        overall[h] += 1
        if is_induced_c5_free(g):
            conditioned[h] += 1
    dist = HomDistribution(n, m, samples, seed, overall, conditioned)
    rate = dist.accepted / samples
    if rate < MIN_ACCEPTANCE:
        raise AcceptanceTooLow(
            f"only {dist.accepted} of {samples} samples (rate {rate:.2e}) are induced-C5-free at n={n}, m={m}"
        )
    return dist


def hom_distribution_exact(n: int, m: int) -> HomDistribution:
    """Exact distribution by enumerating all m-edge graphs on ``[n]`` (small n only)."""
    from itertools import combinations

    pairs = math.comb(n, 2)
    if math.comb(pairs, m) > 10**6:
        raise ValueError("exact hom distribution is limited to 10^6 graphs")
    overall: Counter = Counter()
    conditioned: Counter = Counter()
    for slots in combinations(range(pairs), m):
        g = graph_from_slots(n, slots)
        h = hom(g)
        overall[h] += 1
        if is_induced_c5_free(g):
            conditioned[h] += 1
    return HomDistribution(n, m, sum(overall.values()), None, overall, conditioned)
