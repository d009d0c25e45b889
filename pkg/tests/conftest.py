import numpy as np
import pytest

from discordyn.states import XStateParams, validate_physicality


def random_physical_params(rng) -> XStateParams:
    """Rejection-sample correlation coefficients with a physical state."""
    while True:
        params = XStateParams(*rng.uniform(-1.0, 1.0, size=3))
        if validate_physicality(params).ok:
            return params


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
