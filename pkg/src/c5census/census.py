"""Exact and Monte Carlo censuses of labelled graphs with a fixed edge count.

The exact census walks all m-subsets of the ``C(n,2)`` edge slots in colex
order.  The rank range ``[0, C(C(n,2), m))`` is cut into contiguous chunks;
each chunk unranks its first subset and then steps with the colex successor,
updating the adjacency bitsets in place.  Chunk counts are summed as
integers, so the result does not depend on the number of worker threads.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numba
import numpy as np

from . import _kernels as K
from .entropy import h_exponent, log2_binomial, log2_int
from .generators import edge_slot_arrays
from .graphcore import Graph
from .recognizers import ALL_GRAPHS, ClassPredicate, Tag, is_induced_c5_free, no_subgraph
from .rng import raw_words, substream

BUDGET = 10**10
MAX_EXACT_N = 11
MC_CHUNK = 4096
Z95 = 1.959963984540054


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class CensusResult:
    n: int
    m: int
    predicate: str
    count: int | float
    total: int
    log2_count: float
    exponent: float
    mode: str
    samples: int | None = None
    seed: int | None = None
    hits: int | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    threads: int = 1
    chunks: int = 1
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def density(self) -> float:
        pairs = math.comb(self.n, 2)
        return self.m / pairs if pairs else 0.0

    @property
    def ci_half_width(self) -> float:
        if self.ci_low is None:
            return 0.0
        return (self.ci_high - self.ci_low) / 2

    def as_dict(self) -> dict:
        d = asdict(self)
        d["count_str"] = str(self.count) if self.mode == "exact" else repr(float(self.count))
        d["total_str"] = str(self.total)
        for key in ("log2_count", "exponent"):
            if d[key] == -math.inf:
                d[key] = None
        return d


def edges_from_density(n: int, c) -> int:
    """``m = round(c * C(n,2))``, ties to even; decimal strings and floats are read as decimals."""
    if isinstance(c, Rational):
        c = Fraction(c)
    else:
        c = Fraction(str(c))
    if not 0 <= c <= 1:
        raise ValueError(f"density {c} outside [0, 1]")
    return round(c * math.comb(n, 2))


def _log2_or_inf(x) -> float:
    if x <= 0:
        return -math.inf
    return log2_int(x) if isinstance(x, int) else math.log2(x)


def _threads(threads: int | None) -> int:
    available = numba.config.NUMBA_NUM_THREADS
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, min(int(threads), available))


def _check_exact_budget(n: int, m: int, force: bool) -> int:
    pairs = math.comb(n, 2)
    if not 0 <= m <= pairs:
        raise ValueError(f"m={m} outside 0..{pairs}")
    if n > MAX_EXACT_N:
        raise BudgetExceeded(f"exact census is limited to n <= {MAX_EXACT_N}")
    total = math.comb(pairs, m)
    if total > BUDGET and not force:
        raise BudgetExceeded(f"C({pairs},{m}) = {total} subsets exceeds the budget of {BUDGET}")
    return total


def chunk_bounds(total: int, chunks: int) -> tuple[np.ndarray, np.ndarray]:
    chunks = max(1, min(chunks, total))
    edges = [total * i // chunks for i in range(chunks + 1)]
    return np.array(edges[:-1], dtype=np.int64), np.array(edges[1:], dtype=np.int64)


def exact_census(
    n: int,
    m: int,
    predicate: ClassPredicate = ALL_GRAPHS,
    threads: int | None = None,
    chunks: int | None = None,
    force: bool = False,
) -> CensusResult:
    """Count labelled graphs on ``[n]`` with exactly m edges satisfying ``predicate``."""
    total = _check_exact_budget(n, m, force)
    threads = _threads(threads)
    if chunks is None:
        chunks = 16 * threads
    start_time = time.perf_counter()
    pairs = math.comb(n, 2)
    if predicate.tag is Tag.ALL:
        count, used_chunks = total, 0
    else:
        code, fadj, forder, f = predicate.kernel_args()
        starts, stops = chunk_bounds(total, chunks)
        slot_u, slot_v = edge_slot_arrays(n)
        binom = K.binomial_table(pairs)
        previous = numba.get_num_threads()
        numba.set_num_threads(threads)
        try:
            counts = K.census_chunks(n, m, code, starts, stops, binom, slot_u, slot_v, fadj, forder, f)
        finally:
            numba.set_num_threads(previous)
        count = sum(int(c) for c in counts)
        used_chunks = len(starts)
    log2_count = _log2_or_inf(count)
    return CensusResult(
        n=n, m=m, predicate=predicate.name, count=count, total=total,
        log2_count=log2_count, exponent=log2_count / pairs if pairs else 0.0,
        mode="exact", threads=threads, chunks=used_chunks,
        wall_time=time.perf_counter() - start_time,
    )


def subgraph_census(n: int, m: int, pattern: Graph | None = None, **kwargs) -> CensusResult:
    """Census of graphs without a (not necessarily induced) copy of ``pattern`` (default K3)."""
    if pattern is None:
        pattern = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    return exact_census(n, m, no_subgraph(pattern), **kwargs)


def wilson_interval(hits: int, samples: int, z: float = Z95) -> tuple[float, float]:
    p = hits / samples
    denom = 1 + z * z / samples
    centre = (p + z * z / (2 * samples)) / denom
    half = z * math.sqrt(p * (1 - p) / samples + z * z / (4 * samples * samples)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def _mc_chunk(n, m, pairs, count, seed, stream, pred_args, slot_u, slot_v) -> int:
    code, fadj, forder, f = pred_args
    bitgen = substream(seed, stream)
    raw = raw_words(bitgen, count * m + 8)
    out = np.zeros((count, m), dtype=np.int64)
    perm = np.empty(max(pairs, 1), dtype=np.int64)
    done = 0
    while done < count:
        got, pos = K.fisher_yates_batch(pairs, m, count - done, raw, 0, perm, out[done:])
        done += got
        if done < count:
            raw = np.concatenate([raw[pos:], raw_words(bitgen, (count - done) * m + 8)])
    return int(K.mc_hits(n, m, code, out, slot_u, slot_v, fadj, forder, f))


def monte_carlo_census(
    n: int,
    m: int,
    predicate: ClassPredicate,
    samples: int,
    seed: int,
    threads: int | None = None,
) -> CensusResult:
    """Estimate the census as (hit fraction of uniform G(n, m) samples) x total.

    Samples are drawn in blocks of ``MC_CHUNK``; block ``i`` uses random stream
    ``(seed, i)``, so the estimate is independent of the thread count.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    pairs = math.comb(n, 2)
    if not 0 <= m <= pairs:
        raise ValueError(f"m={m} outside 0..{pairs}")
    if n > 63:
        raise ValueError("Monte Carlo census supports at most 63 vertices")
    threads = _threads(threads)
    total = math.comb(pairs, m)
    start_time = time.perf_counter()
    if predicate.tag is Tag.ALL:
        hits = samples
        lo = hi = 1.0
    else:
        slot_u, slot_v = edge_slot_arrays(n)
        pred_args = predicate.kernel_args()
        sizes = [min(MC_CHUNK, samples - s) for s in range(0, samples, MC_CHUNK)]
        jobs = [(n, m, pairs, size, seed, i, pred_args, slot_u, slot_v) for i, size in enumerate(sizes)]
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                hits = sum(pool.map(lambda job: _mc_chunk(*job), jobs))
        else:
            hits = sum(_mc_chunk(*job) for job in jobs)
        lo, hi = wilson_interval(hits, samples)
    estimate = hits / samples * total
    log2_count = _log2_or_inf(estimate)
    return CensusResult(
        n=n, m=m, predicate=predicate.name, count=estimate, total=total,
        log2_count=log2_count, exponent=log2_count / pairs if pairs else 0.0,
        mode="mc", samples=samples, seed=seed, hits=hits,
        ci_low=lo * total, ci_high=hi * total, threads=threads,
        chunks=math.ceil(samples / MC_CHUNK), wall_time=time.perf_counter() - start_time,
    )


@dataclass
class CurveRow:
    n: int
    c: str
    m: int
    result: CensusResult
    h: float | None

    def as_csv_row(self) -> list[str]:
        r = self.result
        return [
            str(self.n), self.c, str(self.m), r.predicate,
            str(r.count) if r.mode == "exact" else f"{float(r.count):.17g}",
            str(r.total), f"{r.log2_count:.17g}", f"{r.exponent:.17g}",
            "" if self.h is None else f"{self.h:.17g}",
        ]


CURVE_HEADER = ["n", "c", "m", "class", "count", "total", "log2_count", "exponent", "h"]


def exponent_curve(
    n_list,
    c_list,
    predicate: ClassPredicate,
    mode: str = "exact",
    samples: int = 10**5,
    seed: int = 0,
    threads: int | None = None,
    force: bool = False,
) -> list[CurveRow]:
    """Normalised census exponents with the limiting ``h(c)`` alongside."""
    rows = []
    for c in c_list:
        c_text = str(c)
        c_value = float(Fraction(c_text)) if not isinstance(c, Rational) else float(c)
        for n in n_list:
            m = edges_from_density(n, c_text if not isinstance(c, Rational) else c)
            if mode == "exact":
                result = exact_census(n, m, predicate, threads=threads, force=force)
            elif mode == "mc":
                result = monte_carlo_census(n, m, predicate, samples, seed, threads=threads)
            else:
                raise ValueError(f"unknown census mode {mode!r}")
            h = h_exponent(c_value) if 0 < c_value < 1 else None
            rows.append(CurveRow(n, c_text, m, result, h))
    return rows


# -- dangerous pairs ------------------------------------------------------------

P3 = "P3"
ANTI_P3 = "AntiP3"
_PATTERN_EDGES = {P3: [(0, 1), (1, 2)], ANTI_P3: [(0, 1)]}


def _normalise_kind(kind: str) -> str:
    key = kind.replace("-", "").replace("_", "").lower()
    if key == "p3":
        return P3
    if key in ("antip3", "notp3", "cop3"):
        return ANTI_P3
    raise ValueError(f"unknown dangerous-pair kind {kind!r}")


@lru_cache(maxsize=None)
def dangerous_pair_polynomial(kind1: str, kind2: str) -> tuple[int, ...]:
    """``a[k]`` = number of the 512 cross patterns with k edges whose union induces a C5."""
    kind1, kind2 = _normalise_kind(kind1), _normalise_kind(kind2)
    base = _PATTERN_EDGES[kind1] + [(3 + i, 3 + j) for i, j in _PATTERN_EDGES[kind2]]
    cross = [(i, 3 + j) for i in range(3) for j in range(3)]
    coeffs = [0] * 10
    for pattern in range(512):
        edges = base + [cross[b] for b in range(9) if (pattern >> b) & 1]
        if not is_induced_c5_free(Graph.from_edges(6, edges)):
            coeffs[bin(pattern).count("1")] += 1
    return tuple(coeffs)


@dataclass(frozen=True)
class DangerousPairResult:
    kind1: str
    kind2: str
    p: Fraction
    q_exact: Fraction
    lower_bound: Fraction
    coefficients: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "kind1": self.kind1,
            "kind2": self.kind2,
            "p": str(self.p),
            "q_exact": str(self.q_exact),
            "q_float": float(self.q_exact),
            "lower_bound": str(self.lower_bound),
            "lower_bound_float": float(self.lower_bound),
            "coefficients": list(self.coefficients),
        }


def as_fraction(p) -> Fraction:
    if isinstance(p, Rational):
        return Fraction(p)
    return Fraction(str(p))


def dangerous_pair_probability(kind1: str, kind2: str, p) -> DangerousPairResult:
    """Exact probability that random cross edges (each present with probability p)
    between a copy of ``kind1`` and a copy of ``kind2`` create an induced C5."""
    p = as_fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    kind1, kind2 = _normalise_kind(kind1), _normalise_kind(kind2)
    coeffs = dangerous_pair_polynomial(kind1, kind2)
    q = sum((a * p**k * (1 - p) ** (9 - k) for k, a in enumerate(coeffs)), Fraction(0))
    return DangerousPairResult(kind1, kind2, p, q, p**4 * (1 - p) ** 4, coeffs)
