"""Numba kernels over int64 adjacency bitsets (graphs on at most 63 vertices).

Every kernel takes ``adj`` as an int64 array with ``adj[v]`` the neighbourhood
bitmask of ``v``.  Masks stay non-negative because ``n <= 63``.
"""

import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ and "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

PRED_ALL = 0
PRED_C5FREE = 1
PRED_PERFECT = 2
PRED_GENSPLIT = 3
PRED_NO_SUBGRAPH = 4
PRED_CLUSTER = 5

M1 = 0x5555555555555555
M2 = 0x3333333333333333
M4 = 0x0F0F0F0F0F0F0F0F
H01 = 0x0101010101010101


@njit(cache=True)
def popcount(x):
    x = x - ((x >> 1) & M1)
    x = (x & M2) + ((x >> 2) & M2)
    x = (x + (x >> 4)) & M4
    return (x * H01) >> 56


@njit(cache=True)
def low_index(lowbit):
    i = 0
    while lowbit > 1:
        lowbit >>= 1
        i += 1
    return i


@njit(cache=True)
def complement_adj(adj, n):
    full = (np.int64(1) << n) - 1
    out = np.empty(n, np.int64)
    for v in range(n):
        out[v] = full & ~adj[v] & ~(np.int64(1) << v)
    return out


# -- induced cycles -------------------------------------------------------------

@njit(cache=True)
def induced_cycle(adj, n, length):
    """Vertex mask of an induced cycle of the given length, or 0 if none exists."""
    if length > n or length < 3:
        return 0
    path = np.zeros(length, np.int64)
    cand = np.zeros(length, np.int64)
    blocked = np.zeros(length + 1, np.int64)
    one = np.int64(1)
    for s in range(n - length + 1):
        low = (one << (s + 1)) - 1
        ns = adj[s]
        path[0] = s
        cand[1] = ns & ~low
        blocked[2] = low
        depth = 1
        while depth >= 1:
            c = cand[depth]
            if c == 0:
                depth -= 1
                continue
            lb = c & -c
            cand[depth] = c ^ lb
            v = low_index(lb)
            path[depth] = v
            if depth == length - 1:
                mask = 0
                for i in range(length):
                    mask |= one << path[i]
                return mask
            nxt = depth + 1
            if depth >= 2:
                p = path[depth - 1]
                blocked[nxt] = blocked[depth] | adj[p] | (one << p)
            nb = adj[v] & ~blocked[nxt]
            if nxt < length - 1:
                nb &= ~ns
            else:
                # close the cycle; p_1 < p_{L-1} halves the search
                nb &= ns & ~((one << (path[1] + 1)) - 1)
            cand[nxt] = nb
            depth = nxt
    return 0


@njit(cache=True)
def is_c5_witness(adj, mask):
    """True iff ``mask`` is 5 vertices inducing a 2-regular graph, i.e. a C5."""
    if popcount(mask) != 5:
        return False
    m = mask
    while m:
        lb = m & -m
        m ^= lb
        if popcount(adj[low_index(lb)] & mask) != 2:
            return False
    return True


@njit(cache=True)
def odd_hole(adj, n):
    """Mask of an induced odd cycle of length >= 5, or 0."""
    for length in range(5, n + 1, 2):
        w = induced_cycle(adj, n, length)
        if w:
            return w
    return 0


@njit(cache=True)
def perfect_obstruction(adj, n):
    """Returns (side, mask): side 0 = odd hole in G, 1 = odd hole in the complement; mask 0 if perfect."""
    w = odd_hole(adj, n)
    if w:
        return 0, w
    comp = complement_adj(adj, n)
    w = odd_hole(comp, n)
    if w:
        return 1, w
    return 0, 0


# -- cluster graphs and generalised split graphs -------------------------------

@njit(cache=True)
def induced_p3(adj, n, within):
    """Vertices (centre, a, b) of an induced P3 a-centre-b inside ``within``; (-1,-1,-1) if none."""
    one = np.int64(1)
    for v in range(n):
        if not (within >> v) & 1:
            continue
        nv = adj[v] & within
        closed_v = nv | (one << v)
        m = nv
        while m:
            lb = m & -m
            m ^= lb
            u = low_index(lb)
            closed_u = (adj[u] & within) | lb
            if closed_u != closed_v:
                extra = closed_u & ~closed_v
                if extra:
                    return u, v, low_index(extra & -extra)
                extra = closed_v & ~closed_u
                return v, u, low_index(extra & -extra)
    return -1, -1, -1


@njit(cache=True)
def clique_cover_split(adj, n):
    """A clique K such that G - K is a disjoint union of cliques, or -1.

    Branches on induced P3s of G - K: one of the three vertices must join K.
    """
    full = (np.int64(1) << n) - 1
    size = 4 * n + 4
    stack_k = np.empty(size, np.int64)
    stack_c = np.empty(size, np.int64)
    top = 0
    stack_k[0] = 0
    stack_c[0] = full
    top = 1
    one = np.int64(1)
    while top > 0:
        top -= 1
        k = stack_k[top]
        cand = stack_c[top]
        centre, a, b = induced_p3(adj, n, full & ~k)
        if centre < 0:
            return k
        for x in (centre, a, b):
            if (cand >> x) & 1:
                stack_k[top] = k | (one << x)
                stack_c[top] = cand & adj[x]
                top += 1
    return -1


@njit(cache=True)
def generalised_split(adj, n):
    """Returns (side, K): side 0 for G, 1 for its complement; K = -1 if neither works."""
    k = clique_cover_split(adj, n)
    if k >= 0:
        return 0, k
    comp = complement_adj(adj, n)
    k = clique_cover_split(comp, n)
    if k >= 0:
        return 1, k
    return 0, -1


# -- weak subgraph containment -------------------------------------------------

@njit(cache=True)
def _embedding_candidates(adj, n, fadj, forder, fdeg, gdeg, out, depth, used):
    x = forder[depth]
    c = ((np.int64(1) << n) - 1) & ~used
    for d in range(depth):
        y = forder[d]
        if (fadj[x] >> y) & 1:
            c &= adj[out[y]]
    m = c
    while m:
        lb = m & -m
        m ^= lb
        if gdeg[low_index(lb)] < fdeg[x]:
            c &= ~lb
    return c


@njit(cache=True)
def subgraph_embedding(adj, n, fadj, forder, f, out):
    """Injective map of F into G preserving edges; fills ``out`` and returns True if found.

    ``forder`` fixes the order in which F's vertices are placed; each vertex
    should have an earlier neighbour when possible so candidates stay small.
    """
    if f == 0:
        return True
    if f > n:
        return False
    fdeg = np.zeros(f, np.int64)
    for i in range(f):
        fdeg[i] = popcount(fadj[i])
    gdeg = np.zeros(n, np.int64)
    for v in range(n):
        gdeg[v] = popcount(adj[v])
    cand = np.zeros(f, np.int64)
    used = np.int64(0)
    one = np.int64(1)
    cand[0] = _embedding_candidates(adj, n, fadj, forder, fdeg, gdeg, out, 0, used)
    depth = 0
    while depth >= 0:
        c = cand[depth]
        if c == 0:
            depth -= 1
            if depth >= 0:
                used &= ~(one << out[forder[depth]])
            continue
        lb = c & -c
        cand[depth] = c ^ lb
        out[forder[depth]] = low_index(lb)
        used |= lb
        if depth == f - 1:
            return True
        depth += 1
        cand[depth] = _embedding_candidates(adj, n, fadj, forder, fdeg, gdeg, out, depth, used)
    return False


# -- predicate dispatch --------------------------------------------------------

@njit(cache=True)
def check_predicate(pred, adj, n, fadj, forder, f, scratch):
    if pred == PRED_ALL:
        return True
    if pred == PRED_C5FREE:
        return induced_cycle(adj, n, 5) == 0
    if pred == PRED_PERFECT:
        side, w = perfect_obstruction(adj, n)
        return w == 0
    if pred == PRED_GENSPLIT:
        side, k = generalised_split(adj, n)
        return k >= 0
    if pred == PRED_NO_SUBGRAPH:
        return not subgraph_embedding(adj, n, fadj, forder, f, scratch)
    if pred == PRED_CLUSTER:
        c, a, b = induced_p3(adj, n, (np.int64(1) << n) - 1)
        return c < 0
    return False


# -- exact census over colex-ordered edge subsets ------------------------------

@njit(cache=True)
def binomial_table(size):
    t = np.zeros((size + 1, size + 1), np.int64)
    for a in range(size + 1):
        t[a, 0] = 1
        for b in range(1, a + 1):
            t[a, b] = t[a - 1, b - 1] + t[a - 1, b]
    return t


@njit(cache=True)
def colex_unrank(rank, m, binom, out):
    """Fill ``out[0..m)`` with the m-subset of colex rank ``rank`` (sum of C(c_i, i+1))."""
    r = rank
    for i in range(m - 1, -1, -1):
        c = i
        while binom[c + 1, i + 1] <= r:
            c += 1
        out[i] = c
        r -= binom[c, i + 1]


@njit(cache=True)
def _census_chunk(n, m, pred, start, stop, binom, slot_u, slot_v, fadj, forder, f):
    one = np.int64(1)
    comb = np.zeros(max(m, 1), np.int64)
    adj = np.zeros(n, np.int64)
    scratch = np.zeros(max(f, 1), np.int64)
    if m > 0:
        colex_unrank(start, m, binom, comb)
    for i in range(m):
        u = slot_u[comb[i]]
        v = slot_v[comb[i]]
        adj[u] |= one << v
        adj[v] |= one << u
    hits = np.int64(0)
    witness = np.int64(0)
    for r in range(start, stop):
        if pred == PRED_C5FREE:
            if witness != 0 and is_c5_witness(adj, witness):
                ok = False
            else:
                witness = induced_cycle(adj, n, 5)
                ok = witness == 0
        else:
            ok = check_predicate(pred, adj, n, fadj, forder, f, scratch)
        if ok:
            hits += 1
        if r + 1 == stop or m == 0:
            break
        j = 0
        while j < m - 1 and comb[j] + 1 == comb[j + 1]:
            j += 1
        for i in range(j + 1):
            u = slot_u[comb[i]]
            v = slot_v[comb[i]]
            adj[u] &= ~(one << v)
            adj[v] &= ~(one << u)
        comb[j] += 1
        for i in range(j):
            comb[i] = i
        for i in range(j + 1):
            u = slot_u[comb[i]]
            v = slot_v[comb[i]]
            adj[u] |= one << v
            adj[v] |= one << u
    return hits


@njit(parallel=True, cache=True)
def census_chunks(n, m, pred, starts, stops, binom, slot_u, slot_v, fadj, forder, f):
    counts = np.zeros(len(starts), np.int64)
    for ci in prange(len(starts)):
        counts[ci] = _census_chunk(
            n, m, pred, starts[ci], stops[ci], binom, slot_u, slot_v, fadj, forder, f
        )
    return counts


# -- pinned sampling from raw 64-bit words -------------------------------------

@njit(cache=True)
def _bounded(x, bound):
    """Map a raw word to [0, bound) by rejection: returns -1 when the word must be discarded."""
    b = np.uint64(bound)
    threshold = (np.uint64(0) - b) % b
    if x < threshold:
        return -1
    return np.int64(x % b)


@njit(cache=True, nogil=True)
def fisher_yates_batch(total, m, count, raw, pos, perm, out):
    """Draw ``count`` uniform m-subsets of ``range(total)`` by partial Fisher-Yates.

    Consumes ``raw`` sequentially from ``pos``.  Returns (done, pos): if the
    buffer runs dry mid-sample, ``done`` samples are complete and ``pos`` is
    where the unfinished sample started, so the caller can refill and resume
    with an identical result.
    """
    for i in range(total):
        perm[i] = i
    done = 0
    while done < count:
        start = pos
        i = 0
        ok = True
        while i < m:
            if pos >= len(raw):
                ok = False
                break
            j = _bounded(raw[pos], total - i)
            pos += 1
            if j < 0:
                continue
            j += i
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp
            i += 1
        if not ok:
            for k in range(total):
                perm[k] = k
            return done, start
        for k in range(m):
            out[done, k] = perm[k]
        for k in range(total):
            perm[k] = k
        done += 1
    return done, pos


@njit(cache=True, nogil=True)
def mc_hits(n, m, pred, samples, slot_u, slot_v, fadj, forder, f):
    """Count predicate hits over sampled edge subsets (rows of ``samples``)."""
    one = np.int64(1)
    adj = np.zeros(n, np.int64)
    scratch = np.zeros(max(f, 1), np.int64)
    hits = 0
    for s in range(samples.shape[0]):
        for v in range(n):
            adj[v] = 0
        for k in range(m):
            e = samples[s, k]
            adj[slot_u[e]] |= one << slot_v[e]
            adj[slot_v[e]] |= one << slot_u[e]
        if check_predicate(pred, adj, n, fadj, forder, f, scratch):
            hits += 1
    return hits
