import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eprkit.states import Direction  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_direction(rng):
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return Direction(math.acos(np.clip(v[2], -1, 1)), math.atan2(v[1], v[0]))
