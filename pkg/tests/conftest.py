import pytest

from regretlab import (BernoulliStateSpace, VariationBound, WelfareModel,
                       build_grid)


@pytest.fixture(scope="session")
def band_space():
    # target cell p0 in [0.2, 0.6], neighbor tied to it by a +/-0.1 band
    return BernoulliStateSpace(
        lower=(0.2, 0.0), upper=(0.6, 1.0),
        variation=(VariationBound(cell=1, ref=0, lam_minus=-0.1,
                                  lam_plus=0.1),))


@pytest.fixture(scope="session")
def band_grid(band_space):
    return build_grid(band_space, (50, 50))


@pytest.fixture(scope="session")
def small_grid(band_space):
    # coarse version of the same space, for tests where speed matters
    return build_grid(band_space, (13, 13))


@pytest.fixture(scope="session")
def neutral_welfare():
    return WelfareModel.neutralizing(0.6)
