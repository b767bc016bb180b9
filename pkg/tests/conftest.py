import pytest
from hypothesis import HealthCheck, settings

from compchoice import GroundSet

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("ci")


@pytest.fixture
def ab():
    return GroundSet(("a", "b"))


@pytest.fixture
def abc():
    return GroundSet(("a", "b", "c"))
