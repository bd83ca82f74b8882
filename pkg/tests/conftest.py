import pytest
from hypothesis import settings

from hahn_asym.aux_maps import MapBundle
from hahn_asym.oracle import HahnParams

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def bundle64():
    return MapBundle.build(HahnParams(0.3, 0.7, 128, 64))


@pytest.fixture(scope="session")
def bundle_cheb():
    return MapBundle.build(HahnParams(0.0, 0.0, 64, 32))
