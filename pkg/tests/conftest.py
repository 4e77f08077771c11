import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_symmetric(rng, n, scale=1.0):
    a = rng.normal(scale=scale, size=(n, n))
    return (a + a.T) / 2.0


def random_spd(rng, n, jitter=0.5):
    b = rng.normal(size=(n, n))
    return (b @ b.T + b.T @ b) / 2.0 + jitter * np.eye(n)


def random_coupling_profile(rng, size, scale=1.0):
    g = random_symmetric(rng, size, scale)
    np.fill_diagonal(g, 0.0)
    return g
