import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gzk.grid import RealField, make_grid

settings.register_profile(
    "default", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")


def random_field(grid, seed=0):
    rng = np.random.default_rng(seed)
    return RealField(grid, rng.standard_normal(grid.shape))


@pytest.fixture(scope="session")
def grid16():
    return make_grid(16, 10.0)


@pytest.fixture(scope="session")
def grid32():
    return make_grid(32, 20.0)
