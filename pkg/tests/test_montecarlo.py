import math

import numpy as np
import pytest

from conjprob.montecarlo import (
    EstimateWithCI,
    binomial_estimate,
    check_seed,
    chunk_generator,
    count_hits,
    map_chunks,
)


def test_binomial_estimate_std_error():
    est = binomial_estimate(30, 100, seed=1, scale=2.0)
    sample = np.r_[np.ones(30), np.zeros(70)] * 2.0
    assert est.mean == pytest.approx(sample.mean())
    assert est.std_error == pytest.approx(sample.std(ddof=1) / math.sqrt(100), rel=1e-12)
    assert est.hits == 30 and est.samples == 100 and est.seed == 1


def test_ci95_and_dict():
    est = EstimateWithCI(1.0, 0.5, 10, 0, 3)
    assert est.ci95() == pytest.approx((0.02, 1.98))
    assert est.as_dict() == {"mean": 1.0, "std_error": 0.5, "samples": 10, "seed": 0, "hits": 3}


def test_chunk_streams_distinct_and_reproducible():
    a = chunk_generator(3, 1, 0).random(4)
    assert np.array_equal(a, chunk_generator(3, 1, 0).random(4))
    assert not np.array_equal(a, chunk_generator(3, 1, 1).random(4))
    assert not np.array_equal(a, chunk_generator(3, 2, 0).random(4))
    assert not np.array_equal(a, chunk_generator(4, 1, 0).random(4))


def test_map_chunks_order_and_sizes():
    res = map_chunks(10, lambda c, s: (c, s), workers=3, chunk=4)
    assert res == [(0, 4), (1, 4), (2, 2)]


@pytest.mark.parametrize("workers", [1, 2, 5])
def test_count_hits_worker_independent(workers):
    def work(c, s):
        return int((chunk_generator(0, 7, c).random(s) < 0.3).sum())

    assert count_hits(100_000, work, workers, chunk=4096) == count_hits(100_000, work, 1, chunk=4096)


def test_seed_validation():
    assert check_seed(np.int64(4)) == 4
    for bad in (-1, 1.5, True, "3"):
        with pytest.raises(ValueError):
            check_seed(bad)
    with pytest.raises(ValueError):
        map_chunks(5, lambda c, s: s, workers=0)
