import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20250823)


def random_gamma(rng, lo=0.05, hi=20.0):
    """Log-uniform magnitude in [lo, hi] away from 1, random sign."""
    while True:
        mag = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        if abs(mag - 1.0) > 0.08:
            return float(rng.choice([-1.0, 1.0])) * mag
