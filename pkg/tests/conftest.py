import pytest

from exphuff.core import make_distribution

from strategies import BENFORD


@pytest.fixture
def benford():
    return make_distribution(BENFORD)
