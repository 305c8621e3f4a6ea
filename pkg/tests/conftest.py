import pytest

from hypothesis import HealthCheck
from hypothesis import settings as hypothesis_settings

from negsssp.conf import settings

hypothesis_settings.register_profile("negsssp", max_examples=25, deadline=None,
                                     suppress_health_check=[HealthCheck.too_slow])
hypothesis_settings.load_profile("negsssp")

@pytest.fixture(scope="session", autouse=True)
def certified_oracle():
    # every Dijkstra answer in the suite is re-checked against its graph
    with settings.override(check_oracle_certificates=True):
        yield

@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(20240611)
