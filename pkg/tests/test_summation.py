import math

import numpy as np
import pytest

from spheroid_centroid.core.summation import CompensatedSum, compensated_sum


def test_cancellation_is_exact() -> None:
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert compensated_sum([1.0, 1e100, 1.0, -1e100]) == 2.0


def test_matches_fsum_on_ill_conditioned_data(rng: np.random.Generator) -> None:
    values = [float(v) for v in rng.normal(0, 1, 10_000) * 10.0 ** rng.integers(-8, 12, 10_000)]
    values += [-v for v in values[:5000]]
    assert compensated_sum(values) == pytest.approx(math.fsum(values), rel=1e-15, abs=1e-3)


def test_running_sum_interface() -> None:
    acc = CompensatedSum()
    for v in (0.1, 0.2, 0.3):
        acc += v
    assert float(acc) == pytest.approx(0.6, abs=1e-17)
    assert repr(acc).startswith("CompensatedSum(")


def test_order_is_deterministic(rng: np.random.Generator) -> None:
    values = [float(v) for v in rng.uniform(-1e6, 1e6, 1000)]
    assert compensated_sum(values) == compensated_sum(list(values))
