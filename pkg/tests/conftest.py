import pytest
from hypothesis import HealthCheck, settings

from ellipdilog import Lattice

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TAUS = [0.15 + 1.1j, -0.3 + 0.8j, 0.5j + 0.45, 0.05 + 1.7j, -0.42 + 0.95j]


@pytest.fixture(params=TAUS[:2], ids=["tau0", "tau1"])
def lattice(request):
    return Lattice(request.param)


@pytest.fixture
def lat():
    return Lattice(TAUS[0])


def random_point(rng, lattice):
    u, v = rng.random(2)
    return complex(u + v * lattice.tau)
