import random

import pytest

from hamtile import basic_tiles
from hamtile.alphabet import load_library
from hamtile.engine import TiledGraphSpec
from hamtile.graph import Orientation

STRAIGHT, SWAPPED = Orientation.STRAIGHT, Orientation.SWAPPED


@pytest.fixture(scope="session")
def basic():
    return basic_tiles()


@pytest.fixture(scope="session")
def library():
    return load_library()


def random_spec(rng: random.Random, pool, lo=3, hi=5) -> TiledGraphSpec:
    n = rng.randint(lo, hi)
    tiles = [rng.choice(pool) for _ in range(n)]
    ors = [rng.choice((STRAIGHT, SWAPPED)) for _ in range(n)]
    return TiledGraphSpec(tuple(tiles), tuple(ors))
