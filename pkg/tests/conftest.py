import random

import pytest
from hypothesis import HealthCheck, settings

from globrep.family import cyclic_p, elementary_abelian

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def c2_2():
    return cyclic_p(2, 2)


@pytest.fixture(scope="session")
def e2_2():
    return elementary_abelian(2, 2)
