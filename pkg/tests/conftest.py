from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from circleconj import instances

settings.register_profile(
    "ci", deadline=None, max_examples=50,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture(scope="session")
def suite():
    return instances.suite()


@pytest.fixture(scope="session")
def tb03():
    return instances.get("tb_c03_s20").f


@pytest.fixture(scope="session")
def orbit3():
    return instances.get("orbit3_2_q2").f
