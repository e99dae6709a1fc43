import numpy as np
import pytest

from gbl import _accel, set_backend


@pytest.fixture(params=["numba", "numpy"])
def each_backend(request):
    """Run a test once per available kernel backend."""
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    before = _accel.backend()
    set_backend(request.param)
    yield request.param
    set_backend(before)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
