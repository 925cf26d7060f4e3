import random

import pytest
from hypothesis import given, settings, strategies as st

from hamtile.engine import (
    CountBreakdown,
    TiledGraphSpec,
    count_all,
    count_flanking,
    count_flanking_quadratic,
    count_traversing,
    count_zigzagging,
    normalized,
)
from hamtile.graph import Orientation, Side, Tile, invert_tile
from hamtile.oracle import oracle_breakdown

from conftest import STRAIGHT, SWAPPED, random_spec


def ring(basic, names, twist=False):
    return TiledGraphSpec.ring([basic[n] for n in names], twist)


def mirror(t: Tile) -> Tile:
    return Tile(t.graph, t.right, t.left, t.name)


def reversed_spec(spec: TiledGraphSpec) -> TiledGraphSpec:
    tiles = tuple(mirror(t) for t in reversed(spec.tiles))
    ors = spec.orientations[:-1][::-1] + spec.orientations[-1:]
    return TiledGraphSpec(tiles, ors)


def test_breakdown_properties():
    b = CountBreakdown(1, 2, 3, 4, 5)
    assert b.flanking == 9
    assert b.total == 15
    assert b.as_dict()["flanking_w2"] == 3
    assert b.as_dict()["total"] == 15


def test_spec_basics(basic):
    spec = ring(basic, ["R0", "K1", "W1"], twist=True)
    assert len(spec) == 3
    assert spec.orientations == (STRAIGHT, STRAIGHT, SWAPPED)
    assert spec.num_vertices == spec.graph().num_vertices == 6 + 1 + 2
    assert spec.rotated(1).tiles[0] is basic["K1"]


def test_spec_validation(basic):
    with pytest.raises(ValueError):
        TiledGraphSpec((basic["R0"],) * 2, (STRAIGHT,) * 2)


@pytest.mark.parametrize(
    "names, twist, expected",
    [
        (["R0"] * 3, True, (1, 0, 0, 0, 0)),
        (["R0"] * 3, False, (0, 0, 0, 0, 0)),
        (["P0"] * 3, False, (0, 0, 3, 0, 0)),
        (["X0"] * 3, False, (1, 0, 0, 0, 0)),
        (["R0"] * 4, True, (1, 0, 0, 0, 0)),
    ],
)
def test_worked_instances(basic, names, twist, expected):
    assert count_all(ring(basic, names, twist)) == CountBreakdown(*expected)


def test_separate_counters_agree_with_count_all(basic):
    rng = random.Random(3)
    pool = list(basic.values())
    for _ in range(40):
        spec = random_spec(rng, pool, 3, 8)
        b = count_all(spec)
        assert count_traversing(spec) == b.traversing
        assert count_zigzagging(spec) == b.zigzagging
        assert count_flanking(spec) == (b.flanking_w1, b.flanking_w2, b.flanking_w3)


def test_normalized_seam_parity(basic):
    r = basic["R0"]
    _, seam = normalized(TiledGraphSpec((r,) * 4, (SWAPPED, STRAIGHT, SWAPPED, SWAPPED)))
    assert seam is True
    _, seam = normalized(TiledGraphSpec((r,) * 4, (SWAPPED, SWAPPED, STRAIGHT, STRAIGHT)))
    assert seam is False


specs = st.builds(
    lambda seed, lo, hi: (seed, lo, hi),
    st.integers(0, 2**32),
    st.just(3),
    st.integers(3, 9),
)


@pytest.fixture(scope="module")
def pool(basic, library):
    return list(basic.values()) + [library[k] for k in ("DDdL", "HL", "BAL", "VIdL")]


@settings(max_examples=120, deadline=None)
@given(specs)
def test_rotation_invariance(pool, args):
    spec = random_spec(random.Random(args[0]), pool, args[1], args[2])
    b = count_all(spec)
    for k in range(1, len(spec)):
        assert count_all(spec.rotated(k)) == b


@settings(max_examples=120, deadline=None)
@given(specs)
def test_reflection_invariance(pool, args):
    spec = random_spec(random.Random(args[0]), pool, args[1], args[2])
    assert count_all(reversed_spec(spec)) == count_all(spec)


@settings(max_examples=120, deadline=None)
@given(specs)
def test_global_inversion_invariance(pool, args):
    spec = random_spec(random.Random(args[0]), pool, args[1], args[2])
    flipped = TiledGraphSpec(tuple(invert_tile(t, Side.BOTH) for t in spec.tiles), spec.orientations)
    assert count_all(flipped) == count_all(spec)


@settings(max_examples=120, deadline=None)
@given(specs, st.data())
def test_moving_a_swap_across_inverted_tiles(pool, args, data):
    """Swapping joins i and j and inverting the tiles between is a relabelling."""
    spec = random_spec(random.Random(args[0]), pool, args[1], args[2])
    n = len(spec)
    i = data.draw(st.integers(0, n - 2))
    j = data.draw(st.integers(i + 1, n - 1))
    ors = list(spec.orientations)
    for k in (i, j):
        ors[k] = ors[k] ^ SWAPPED
    tiles = [invert_tile(t, Side.BOTH) if i < k <= j else t for k, t in enumerate(spec.tiles)]
    assert count_all(TiledGraphSpec(tuple(tiles), tuple(ors))) == count_all(spec)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(3, 14))
def test_linear_flanking_matches_quadratic(pool, seed, hi):
    spec = random_spec(random.Random(seed), pool, 3, hi)
    assert count_flanking(spec) == count_flanking_quadratic(spec)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_engine_matches_oracle(basic, seed):
    spec = random_spec(random.Random(seed), list(basic.values()), 3, 5)
    assert count_all(spec) == oracle_breakdown(spec)


def test_counts_are_exact_big_integers(library):
    spec = TiledGraphSpec.ring([library["DDdL"]] * 41, twist=True)
    assert count_all(spec).traversing == 8**41
