import pytest

from negations.simplex_core import Dist, make_dist

EXAMPLE_DIST = (0.1, 0.2, 0.15, 0.3, 0.25)


@pytest.fixture
def example_dist() -> Dist:
    return make_dist(EXAMPLE_DIST)
