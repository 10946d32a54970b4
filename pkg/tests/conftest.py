import pytest

from qgame import make_centipede_scheme
from qgame.presets import pd3_scheme


@pytest.fixture(scope="session")
def pd3():
    return pd3_scheme()


@pytest.fixture(scope="session")
def centipede4():
    """(scheme, designated profile) of the 4-stage centipede."""
    return make_centipede_scheme(4)
