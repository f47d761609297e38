import pytest
from hypothesis import HealthCheck, settings

from invlat.catalog import get_entry

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def s3():
    return get_entry("S3-standard").group()


@pytest.fixture(scope="session")
def s4():
    return get_entry("S4-standard").group()


@pytest.fixture(scope="session")
def b2():
    return get_entry("WeylB2").group()


@pytest.fixture(scope="session")
def g4():
    return get_entry("G4").group()


@pytest.fixture(scope="session")
def q8():
    return get_entry("Q8").group()


@pytest.fixture(scope="session")
def c5():
    return get_entry("C5-zeta5").group()
