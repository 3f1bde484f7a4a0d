"""Seeded, worker-count-independent Monte Carlo plumbing.

Work is cut into fixed-size chunks. Chunk ``c`` of a run seeded with ``seed``
draws from a Philox (counter-based) generator keyed by ``(seed, stream, c)``,
so the integer hit count of a run depends only on the seed and the sample
count, never on how many workers processed the chunks.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

CHUNK = 1 << 16


@dataclass(frozen=True)
class EstimateWithCI:
    """Monte Carlo estimate with its standard error."""

    mean: float
    std_error: float
    samples: int
    seed: int
    hits: int | None = None

    def ci95(self) -> tuple[float, float]:
        return self.mean - 1.96 * self.std_error, self.mean + 1.96 * self.std_error

    def as_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
            "hits": self.hits,
        }


def default_workers() -> int:
    return os.cpu_count() or 1


def chunk_generator(seed: int, stream: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream, chunk])))


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def map_chunks(
    total: int,
    work: Callable[[int, int], Any],
    workers: int | None = None,
    chunk: int = CHUNK,
) -> list:
    """Evaluate ``work(chunk_index, chunk_size)`` over the chunks covering ``total``.

    Results come back in chunk order whatever the number of workers. Kernels
    release the GIL, so a thread pool is enough for parallelism.
    """
    sizes = [min(chunk, total - start) for start in range(0, total, chunk)]
    workers = default_workers() if workers is None else int(workers)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(sizes) <= 1:
        return [work(c, s) for c, s in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, range(len(sizes)), sizes))


def count_hits(total: int, work: Callable[[int, int], int], workers: int | None = None,
               chunk: int = CHUNK) -> int:
    return int(sum(map_chunks(total, work, workers, chunk)))


def binomial_estimate(hits: int, samples: int, seed: int, scale: float = 1.0) -> EstimateWithCI:
    """Scaled hit fraction; the standard error uses the sample (ddof=1) deviation."""
    p = hits / samples
    var = p * (1.0 - p) * samples / (samples - 1) if samples > 1 else 0.0
    se = math.sqrt(var / samples)
    return EstimateWithCI(scale * p, scale * se, samples, seed, hits)
