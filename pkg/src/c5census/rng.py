"""Reproducible random streams.

Every random object in the package is drawn from a PCG64 generator seeded by
``SeedSequence(seed, spawn_key=(stream,))`` and consumed only through its raw
64-bit output.  Bounded integers use rejection (``x >= 2**64 mod b`` is kept,
then ``x mod b``), so results depend on nothing but the PCG64 stream and are
identical across platforms and worker counts.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K


def substream(seed: int, stream: int = 0) -> np.random.PCG64:
    if seed < 0 or stream < 0:
        raise ValueError("seed and stream id must be non-negative")
    return np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,)))


def raw_words(bitgen: np.random.PCG64, count: int) -> np.ndarray:
    return np.asarray(bitgen.random_raw(count), dtype=np.uint64)


def sample_subsets(total: int, m: int, count: int, seed: int, stream: int = 0) -> np.ndarray:
    """``count`` independent uniform m-subsets of ``range(total)``, as rows (draw order, unsorted)."""
    if not 0 <= m <= total:
        raise ValueError(f"cannot choose {m} of {total}")
    out = np.zeros((count, m), dtype=np.int64)
    if count == 0:
        return out
    bitgen = substream(seed, stream)
    raw = raw_words(bitgen, count * m + 8)
    perm = np.empty(max(total, 1), dtype=np.int64)
    done = 0
    while done < count:
        got, pos = K.fisher_yates_batch(total, m, count - done, raw, 0, perm, out[done:])
        done += got
        if done < count:
            raw = np.concatenate([raw[pos:], raw_words(bitgen, (count - done) * m + 8)])
    return out


def bounded_ints(bound: int, count: int, seed: int, stream: int = 0) -> list[int]:
    """``count`` uniform integers in ``[0, bound)`` with the same rejection rule."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    bitgen = substream(seed, stream)
    threshold = (2**64 - bound) % bound
    out: list[int] = []
    while len(out) < count:
        for x in raw_words(bitgen, count - len(out)):
            x = int(x)
            if x >= threshold:
                out.append(x % bound)
    return out
