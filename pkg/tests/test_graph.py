import pytest

from hamtile.graph import (
    DuplicateEdgeId,
    DuplicateWallVertex,
    Edge,
    LoopEdge,
    MultiGraph,
    Orientation,
    Side,
    TileError,
    TooFewTiles,
    UnknownVertex,
    WallOverlap,
    cyclize,
    cyclize_layout,
    invert_tile,
    join,
    make_tile,
)

STRAIGHT, SWAPPED = Orientation.STRAIGHT, Orientation.SWAPPED


def rung():
    return make_tile(MultiGraph.from_pairs(4, [(0, 2), (1, 3)]), (0, 1), (2, 3), "R0")


def test_from_pairs_assigns_positional_ids():
    g = MultiGraph.from_pairs(3, [(0, 1), (1, 2), (0, 1)])
    assert [e.eid for e in g.edges] == [0, 1, 2]
    assert g.degree(1) == 3
    assert g.num_edges == 3
    assert g.edge(2) == Edge(2, 0, 1)


def test_parallel_edges_are_kept():
    g = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    assert g.num_edges == 2
    assert sorted(w for _, w in g.neighbours(0)) == [1, 1]


@pytest.mark.parametrize(
    "vertices, edges, exc",
    [
        ((0, 1), (Edge(0, 0, 0),), LoopEdge),
        ((0, 1), (Edge(0, 0, 5),), UnknownVertex),
        ((0, 1), (Edge(0, 0, 1), Edge(0, 1, 0)), DuplicateEdgeId),
    ],
)
def test_multigraph_rejects(vertices, edges, exc):
    with pytest.raises(exc):
        MultiGraph(vertices, edges)


def test_missing_edge_id():
    with pytest.raises(KeyError):
        MultiGraph.from_pairs(2, [(0, 1)]).edge(7)


def test_make_tile_checks_walls():
    g = MultiGraph.from_pairs(4, [(0, 2), (1, 3)])
    with pytest.raises(WallOverlap):
        make_tile(g, (0, 1), (1, 2))
    with pytest.raises(DuplicateWallVertex):
        make_tile(g, (0, 0), (2, 3))
    with pytest.raises(UnknownVertex):
        make_tile(g, (0, 1), (2, 9))
    with pytest.raises(TileError):
        make_tile(g, (0, 1, 2), (3,))


def test_tile_errors_are_value_errors():
    assert issubclass(TileError, ValueError)


def test_internal_vertices():
    g = MultiGraph.from_pairs(5, [(0, 4), (4, 2), (1, 3)])
    t = make_tile(g, (0, 1), (2, 3))
    assert t.internal == (4,)
    assert t.walls == (0, 1, 2, 3)


def test_invert_tile_sides():
    t = rung()
    assert invert_tile(t, Side.LEFT).left == (1, 0)
    assert invert_tile(t, Side.LEFT).right == (2, 3)
    assert invert_tile(t, Side.RIGHT).right == (3, 2)
    both = invert_tile(t, Side.BOTH)
    assert (both.left, both.right) == ((1, 0), (3, 2))
    assert invert_tile(both, Side.BOTH) == t


def test_orientation_xor():
    assert STRAIGHT ^ STRAIGHT is STRAIGHT
    assert SWAPPED ^ SWAPPED is STRAIGHT
    assert STRAIGHT ^ SWAPPED is SWAPPED


def test_join_counts_and_walls():
    t = rung()
    j = join(t, t)
    assert j.graph.num_vertices == 6
    assert j.graph.num_edges == 4
    assert j.left == (0, 1)
    # the straight join leaves the rails parallel
    ends = {frozenset((e.a, e.b)) for e in j.graph.edges}
    assert frozenset((2, j.right[0])) in ends


def test_swapped_join_crosses_rails():
    t = rung()
    j = join(t, t, SWAPPED)
    ends = {frozenset((e.a, e.b)) for e in j.graph.edges}
    # x1 -> y1 of the first tile lands on the second wall vertex of the second tile
    assert frozenset((3, j.right[0])) in ends
    assert frozenset((2, j.right[1])) in ends


def test_cyclize_sizes():
    t = rung()
    g = cyclize([t] * 4, [STRAIGHT] * 4)
    assert g.num_vertices == 8
    assert g.num_edges == 8
    assert all(g.degree(v) == 2 for v in g.vertices)


def test_cyclize_layout_maps():
    t = rung()
    lay = cyclize_layout([t] * 3, [STRAIGHT, STRAIGHT, SWAPPED])
    assert lay.vertex_maps[0][0] == 0 and lay.vertex_maps[0][1] == 1
    # the swapped closing seam sends (y1, y2) of the last tile to (x2, x1) of the first
    assert lay.vertex_maps[2][2] == 1 and lay.vertex_maps[2][3] == 0
    all_edges = sorted(ge for em in lay.edge_maps for ge in em.values())
    assert all_edges == list(range(lay.graph.num_edges))


def test_cyclize_needs_three_tiles():
    t = rung()
    with pytest.raises(TooFewTiles):
        cyclize([t, t], [STRAIGHT, STRAIGHT])
    with pytest.raises(TileError):
        cyclize([t, t, t], [STRAIGHT])
