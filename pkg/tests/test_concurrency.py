"""Evaluation operations are pure; concurrent use must match serial results."""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from wavebounds.daub_filters import construct_filter, magnitude_squared_H
from wavebounds.norms import NormRequest, weighted_lp_norm
from wavebounds.spectral_eval import wavelet_hat, wavelet_hat_abs2


def test_parallel_pointwise_evaluation_matches_serial():
    grid = [(m, float(w)) for m in (1, 2, 3, 5) for w in np.linspace(-20.0, 20.0, 41)]
    serial = [wavelet_hat_abs2(m, w) for m, w in grid]
    with ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda mw: wavelet_hat_abs2(*mw), grid))
    assert parallel == serial


def test_parallel_filter_construction_is_consistent():
    with ThreadPoolExecutor(max_workers=8) as pool:
        specs = list(pool.map(construct_filter, [4] * 16))
    assert all(s.taps == specs[0].taps for s in specs)
    assert abs(sum(specs[0].taps) - math.sqrt(2.0)) < 1e-12


def test_parallel_mixed_workload():
    def job(i):
        m = 1 + (i % 3)
        w = 0.5 + 0.37 * i
        return (
            magnitude_squared_H(m, w),
            abs(wavelet_hat(m, w)),
            weighted_lp_norm(NormRequest(m, 0, 2.0)).value if i % 7 == 0 else None,
        )

    serial = [job(i) for i in range(21)]
    with ThreadPoolExecutor(max_workers=6) as pool:
        parallel = list(pool.map(job, range(21)))
    assert parallel == serial
