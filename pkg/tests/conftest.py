import numpy as np
import pytest

from dmcast.arrays import ArrayConfig, GroupLayout, build_channels
from dmcast.precoding import SCHEMES, design_scheme
from dmcast.signals import PowerProfile, norm_factors, scheme_loadings

PAPER_DESIRED = ((30.0, 45.0), (120.0, 135.0))
PAPER_EVES = (80.0, 98.0)


@pytest.fixture(scope="session")
def paper_array():
    return ArrayConfig(16, 0.5)


@pytest.fixture(scope="session")
def paper_layout():
    return GroupLayout(PAPER_DESIRED, PAPER_EVES)


@pytest.fixture(scope="session")
def paper_channels(paper_layout, paper_array):
    return build_channels(paper_layout, paper_array)


@pytest.fixture(scope="session")
def profile14():
    return PowerProfile.from_snr_db(14.0)


@pytest.fixture(scope="session")
def factors14(profile14):
    return norm_factors(profile14, 2, 12)


@pytest.fixture(scope="session")
def loading14(profile14, factors14):
    return scheme_loadings(profile14, factors14, 12)


@pytest.fixture(scope="session")
def designs14(paper_channels, loading14):
    desired, eve = paper_channels
    return {s: design_scheme(s, desired, eve, loading14) for s in SCHEMES}


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
