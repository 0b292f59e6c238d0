from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("tenspec", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("tenspec")

rationals = st.builds(
    Fraction,
    st.integers(min_value=-100, max_value=100),
    st.integers(min_value=1, max_value=100),
)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
