import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hoopworld.world import WorldConfig


@pytest.fixture(scope="session")
def cfg() -> WorldConfig:
    return WorldConfig()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
