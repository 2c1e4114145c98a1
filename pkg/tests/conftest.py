import pytest
from hypothesis import HealthCheck, settings

from artifact.rootdata import build_root_datum

settings.register_profile(
    "artifact", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("artifact")

RANK_TWO = ("A", "B", "C", "G")


@pytest.fixture(scope="session")
def A2():
    return build_root_datum("A", 2)


@pytest.fixture(scope="session")
def A3():
    return build_root_datum("A", 3)


@pytest.fixture(scope="session")
def C2():
    return build_root_datum("C", 2)


@pytest.fixture(scope="session", params=RANK_TWO)
def rank_two(request):
    return build_root_datum(request.param, 2)
