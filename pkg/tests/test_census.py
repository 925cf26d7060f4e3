import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from hamtile.census import (
    ALL_CTYPES,
    COV,
    FLANK_DOUBLE,
    FLANK_EMPTY,
    ISO,
    TRAV_ALIGNED,
    TRAV_TWISTED,
    X4,
    SWAP2,
    CType,
    CTypeCounts,
    census,
    conjugate_census,
    flank_left,
    flank_right,
    matmul,
    trace,
    transfer_set,
    zig,
)
from hamtile.graph import MultiGraph, Side, invert_tile, make_tile
from hamtile.oracle import UnclassifiableCycle, tile_pattern


def brute_census(tile):
    """Tally the C-type of every edge subset that is a valid tile intersection."""
    tally = Counter()
    eids = [e.eid for e in tile.graph.edges]
    for r in range(len(eids) + 1):
        for sub in itertools.combinations(eids, r):
            try:
                tally[tile_pattern(tile, sub)] += 1
            except UnclassifiableCycle:
                pass
    return CTypeCounts(tally)


def test_28_distinct_ctypes():
    assert len(ALL_CTYPES) == 28
    assert len(set(ALL_CTYPES)) == 28


@pytest.mark.parametrize("ct", ALL_CTYPES, ids=str)
def test_ctype_parse_round_trip(ct):
    assert CType.parse(str(ct)) == ct


def test_ctype_parse_rejects_unknown():
    with pytest.raises(ValueError):
        CType.parse("ZIG(3,1,COV,COV)")


def test_counts_validation():
    with pytest.raises(KeyError):
        CTypeCounts({CType("NOPE"): 1})
    with pytest.raises(ValueError):
        CTypeCounts({TRAV_ALIGNED: -1})
    assert CTypeCounts()[TRAV_TWISTED] == 0
    assert len(CTypeCounts()) == 28


def test_rung_census(basic):
    c = census(basic["R0"])
    assert c.nonzero() == {
        TRAV_ALIGNED: 1,
        FLANK_EMPTY: 1,
        zig(1, 1, ISO, ISO): 1,
        zig(2, 2, ISO, ISO): 1,
    }


def test_cross_census(basic):
    c = census(basic["X0"])
    assert c.twisted == 1 and c.aligned == 0
    assert c[zig(1, 2, ISO, ISO)] == 1


def test_prism_census(basic):
    c = census(basic["P0"])
    assert c.aligned == 1
    assert c[flank_right(ISO, ISO)] == 1
    assert c[zig(1, 2, ISO, COV)] == 1
    assert c[zig(2, 1, ISO, COV)] == 1


def test_parallel_edges_multiply():
    g = MultiGraph.from_pairs(4, [(0, 2), (0, 2), (1, 3), (1, 3), (1, 3)])
    c = census(make_tile(g, (0, 1), (2, 3)))
    assert c.aligned == 6
    assert c[zig(1, 1, ISO, ISO)] == 2


@pytest.mark.parametrize("name", ["R0", "P0", "X0", "K1", "W1"])
def test_census_matches_edge_subset_enumeration(basic, name):
    assert census(basic[name]) == brute_census(basic[name])


def test_library_census_matches_edge_subset_enumeration(library):
    for key in ["DDdL", "HL", "VIdL", "BAL", "AVdL", "DIVdL", "AIVL"]:
        assert census(library[key]) == brute_census(library[key]), key


@pytest.mark.parametrize("side", list(Side))
def test_conjugate_census_is_relabelling(basic, library, side):
    for t in list(basic.values()) + [library[k] for k in ("DDdL", "VIDdL", "BAdL")]:
        assert conjugate_census(census(t), side) == census(invert_tile(t, side))


def test_transfer_matrices_of_rung(basic):
    ts = transfer_set(census(basic["R0"]))
    assert ts.R == ((1, 0), (0, 1))
    assert ts.row_sum == 1
    assert trace(ts.Z) == 0
    assert ts.flanking[FLANK_EMPTY] == 1


def test_matrix_helpers():
    a = ((1, 2), (3, 4))
    assert matmul(a, SWAP2) == ((2, 1), (4, 3))
    assert matmul(SWAP2, a) == ((3, 4), (1, 2))
    assert matmul(X4, X4) == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    assert trace(a) == 5


def test_flank_constructors_are_distinct():
    kinds = {flank_left(a, b) for a in (COV, ISO) for b in (COV, ISO)}
    kinds |= {flank_right(a, b) for a in (COV, ISO) for b in (COV, ISO)}
    assert len(kinds) == 8
    assert FLANK_DOUBLE not in kinds


@st.composite
def small_tiles(draw):
    n = draw(st.integers(4, 6))
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]),
            min_size=1,
            max_size=9,
        )
    )
    return make_tile(MultiGraph.from_pairs(n, pairs), (0, 1), (2, 3))


@settings(max_examples=150, deadline=None)
@given(small_tiles())
def test_census_matches_brute_force_on_random_tiles(tile):
    assert census(tile) == brute_census(tile)


@settings(max_examples=100, deadline=None)
@given(small_tiles())
def test_inversion_identities_on_random_tiles(tile):
    z = transfer_set(census(tile)).Z
    r = transfer_set(census(tile)).R
    assert transfer_set(census(invert_tile(tile, Side.BOTH))).Z == matmul(matmul(X4, z), X4)
    assert transfer_set(census(invert_tile(tile, Side.RIGHT))).Z == matmul(X4, z)
    assert transfer_set(census(invert_tile(tile, Side.RIGHT))).R == matmul(SWAP2, r)
