import pytest

from kfock.point import PointTheory
from kfock.series import TruncationPolicy


@pytest.fixture(scope="session")
def P():
    """Theory at the default policy R=6, D=6, K_t=4, T=3 (caches shared across tests)."""
    return PointTheory(TruncationPolicy())


@pytest.fixture(scope="session")
def P_small():
    return PointTheory(TruncationPolicy(R=3, D=3, K_t=2, T=2))
