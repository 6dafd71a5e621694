import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("nosig", max_examples=60, deadline=None)
settings.load_profile("nosig")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
