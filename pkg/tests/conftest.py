import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tenfold.linalg import RngStream  # noqa: E402


@pytest.fixture
def rng():
    return RngStream(2024)
