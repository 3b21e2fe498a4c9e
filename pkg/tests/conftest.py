import pytest

from nftdisk import _kernels
from nftdisk.synthetic import planted_ring_collection


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timed tests measure the algorithms."""
    _kernels.warmup()


@pytest.fixture(scope="session")
def ring():
    return planted_ring_collection()
