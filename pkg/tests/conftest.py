import numpy as np
import pytest

from nelsonlab import Grid1D, diffusion_params
from nelsonlab.fields import analytic_oracle


@pytest.fixture(scope="session")
def grid801():
    return Grid1D(-8.0, 8.0, 801)


@pytest.fixture(scope="session")
def dyadic_grid():
    # dx = 2^-6: stencil coefficients are exactly representable
    return Grid1D(-8.0, 8.0, 1025)


@pytest.fixture(scope="session")
def ground(grid801):
    return analytic_oracle("ho_ground", None, grid801, [0.0])


@pytest.fixture(scope="session")
def p_half():
    return diffusion_params("nu", 0.5)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
