import pytest

from cavchem import model


@pytest.fixture
def defaults():
    return model.reference_defaults()


@pytest.fixture
def grid():
    return model.default_grid()


@pytest.fixture
def coarse_grid():
    # same span as the default grid, 0.5 cm^-1 spacing; keeps CLI tests fast
    return model.FrequencyGrid(3330.0, 3530.0, 401)
