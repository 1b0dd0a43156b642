"""Slow, obviously-correct reference implementations used by the tests.

Nothing here touches the package's kernels: graphs are plain edge sets and
every check is a direct enumeration.
"""

import itertools
import math
import random

from c5census.graphcore import Graph


def edge_set(g):
    return {(i, j) for i, j in g.edges()}


def adjacent(es, u, v):
    return (min(u, v), max(u, v)) in es


def induced_edges(es, vs):
    return [(u, v) for u, v in itertools.combinations(sorted(vs), 2) if adjacent(es, u, v)]


def is_induced_cycle(es, vs):
    vs = list(vs)
    if len(vs) < 3:
        return False
    edges = induced_edges(es, vs)
    if len(edges) != len(vs):
        return False
    deg = {v: 0 for v in vs}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if any(d != 2 for d in deg.values()):
        return False
    # connected 2-regular = a single cycle
    seen, stack = {vs[0]}, [vs[0]]
    while stack:
        x = stack.pop()
        for y in vs:
            if y not in seen and adjacent(es, x, y):
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def has_induced_c5(g):
    es = edge_set(g)
    return any(is_induced_cycle(es, vs) for vs in itertools.combinations(range(g.n), 5))


def complement_edges(g):
    es = edge_set(g)
    return {(i, j) for i, j in itertools.combinations(range(g.n), 2) if (i, j) not in es}


def has_odd_hole_or_antihole(g):
    es, ces = edge_set(g), complement_edges(g)
    for size in range(5, g.n + 1, 2):
        for vs in itertools.combinations(range(g.n), size):
            if is_induced_cycle(es, vs) or is_induced_cycle(ces, vs):
                return True
    return False


def clique_number(es, vs):
    vs = list(vs)
    for size in range(len(vs), 0, -1):
        for sub in itertools.combinations(vs, size):
            if all(adjacent(es, u, v) for u, v in itertools.combinations(sub, 2)):
                return size
    return 0


def chromatic_number(es, vs):
    vs = list(vs)
    if not vs:
        return 0
    for k in range(1, len(vs) + 1):
        for colours in itertools.product(range(k), repeat=len(vs) - 1):
            col = dict(zip(vs, (0,) + colours))
            if all(col[u] != col[v] for u, v in induced_edges(es, vs)):
                return k
    return len(vs)


def perfect_by_definition_masks(n, adj):
    """chi = omega on every induced subgraph, by subset dynamic programming."""
    full = 1 << n
    indep = [True] * full
    clique = [True] * full
    for s in range(1, full):
        v = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        indep[s] = indep[rest] and not (adj[v] & rest)
        clique[s] = clique[rest] and (adj[v] & rest) == rest
    omega = [0] * full
    chi = [0] * full
    for s in range(1, full):
        v = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        omega[s] = max(omega[rest], 1 + omega[rest & adj[v]])
        # colour class containing v: an independent subset of s through v
        best = n + 1
        sub = rest
        while True:
            t = sub | (1 << v)
            if indep[t]:
                best = min(best, 1 + chi[s & ~t])
            if sub == 0:
                break
            sub = (sub - 1) & rest
        chi[s] = best
        if chi[s] != omega[s]:
            return False
    return True


def perfect_by_definition(g):
    return perfect_by_definition_masks(g.n, list(g.adj))


def has_induced_p3(es, vs):
    return any(len(induced_edges(es, t)) == 2 for t in itertools.combinations(sorted(vs), 3))


def is_generalised_split(g):
    """Some clique K (of G or of its complement) leaves a disjoint union of cliques."""
    for es in (edge_set(g), complement_edges(g)):
        for size in range(0, g.n + 1):
            for k in itertools.combinations(range(g.n), size):
                if any(not adjacent(es, u, v) for u, v in itertools.combinations(k, 2)):
                    continue
                rest = [v for v in range(g.n) if v not in k]
                if not has_induced_p3(es, rest):
                    return True
    return False


def contains_subgraph(g, f):
    es, fes = edge_set(g), edge_set(f)
    for image in itertools.permutations(range(g.n), f.n):
        if all(adjacent(es, image[u], image[v]) for u, v in fes):
            return True
    return False


def graphs_with_m_edges(n, m):
    slots = list(itertools.combinations(range(n), 2))
    for chosen in itertools.combinations(slots, m):
        yield Graph.from_edges(n, chosen)


def gnp(n, p, seed):
    rnd = random.Random(seed)
    return Graph.from_edges(n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rnd.random() < p])


def hom_number(g):
    es, ces = edge_set(g), complement_edges(g)
    return max(clique_number(es, range(g.n)), clique_number(ces, range(g.n)))


def binary_entropy(x):
    if x in (0, 1):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def coloured_hom_ok(f, r, h):
    """Check a map h: V(F) -> V(R) against the three coloured-homomorphism rules."""
    for u, v in itertools.combinations(range(f.n), 2):
        a, b = h[u], h[v]
        if a == b:
            if r.vertex_colour[a] != (1 if f.has_edge(u, v) else 0):
                return False
            continue
        col = r.edge_colour.get((min(a, b), max(a, b)))
        if col is None:
            return False
        if f.has_edge(u, v) and col == 0:
            return False
        if not f.has_edge(u, v) and col == 1:
            return False
    return True


def coloured_hom_exists(f, r):
    return any(coloured_hom_ok(f, r, h) for h in itertools.product(range(r.k), repeat=f.n))
