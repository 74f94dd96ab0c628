import pytest

from edeval import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # First kernel call compiles (cached on disk afterwards); keep that out
    # of individual tests so timings stay meaningful.
    _kernels.warmup()
