"""Multigraphs, 2-tiles and the tile algebra (join, cyclization, wall inversion).

Edges carry their own identity, so two parallel edges between the same pair of
vertices are distinct edges and a cycle through one of them is distinct from the
cycle through the other.  Loops are rejected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class TileError(ValueError):
    """Base class for malformed graphs, tiles and tile sequences."""


class UnknownVertex(TileError):
    pass


class LoopEdge(TileError):
    pass


class DuplicateEdgeId(TileError):
    pass


class WallOverlap(TileError):
    pass


class DuplicateWallVertex(TileError):
    pass


class TooFewTiles(TileError):
    pass


class Orientation(enum.Enum):
    """How the right wall of a tile is glued onto the left wall of the next one."""

    STRAIGHT = "straight"
    SWAPPED = "swapped"

    def __xor__(self, other: "Orientation") -> "Orientation":
        if self is other:
            return Orientation.STRAIGHT
        return Orientation.SWAPPED


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"

    @property
    def flips_left(self) -> bool:
        return self is not Side.RIGHT

    @property
    def flips_right(self) -> bool:
        return self is not Side.LEFT


@dataclass(frozen=True, order=True)
class Edge:
    eid: int
    a: int
    b: int

    def other(self, v: int) -> int:
        return self.b if v == self.a else self.a


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    _adj: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        vset = set(self.vertices)
        seen: set[int] = set()
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.eid in seen:
                raise DuplicateEdgeId(f"edge id {e.eid} used twice")
            seen.add(e.eid)
            if e.a not in vset or e.b not in vset:
                raise UnknownVertex(f"edge {e.eid} has an endpoint outside the vertex set")
            if e.a == e.b:
                raise LoopEdge(f"edge {e.eid} is a loop at {e.a}")
            adj[e.a].append((e.eid, e.b))
            adj[e.b].append((e.eid, e.a))
        object.__setattr__(self, "_adj", {v: tuple(nb) for v, nb in adj.items()})

    @classmethod
    def from_pairs(cls, n: int | Iterable[int], pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Build a graph whose edge ids are the positions of ``pairs``."""
        vertices = range(n) if isinstance(n, int) else n
        return cls(tuple(vertices), tuple(Edge(i, a, b) for i, (a, b) in enumerate(pairs)))

    def neighbours(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(edge_id, other_endpoint)`` pairs incident to ``v``."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.eid == eid:
                return e
        raise KeyError(eid)


@dataclass(frozen=True)
class Tile:
    graph: MultiGraph
    left: tuple[int, int]
    right: tuple[int, int]
    name: str = ""

    @property
    def walls(self) -> tuple[int, int, int, int]:
        return (*self.left, *self.right)

    @property
    def internal(self) -> tuple[int, ...]:
        walls = set(self.walls)
        return tuple(v for v in self.graph.vertices if v not in walls)

    def renamed(self, name: str) -> "Tile":
        return Tile(self.graph, self.left, self.right, name)


def make_tile(graph: MultiGraph, left: Sequence[int], right: Sequence[int], name: str = "") -> Tile:
    left, right = tuple(left), tuple(right)
    if len(left) != 2 or len(right) != 2:
        raise TileError("walls must have exactly two vertices")
    vset = set(graph.vertices)
    for v in left + right:
        if v not in vset:
            raise UnknownVertex(f"wall vertex {v} is not in the graph")
    if set(left) & set(right):
        raise WallOverlap(f"vertex {sorted(set(left) & set(right))} lies in both walls")
    if left[0] == left[1] or right[0] == right[1]:
        raise DuplicateWallVertex("a wall repeats a vertex")
    return Tile(graph, left, right, name)


def invert_tile(tile: Tile, side: Side) -> Tile:
    left = tile.left[::-1] if side.flips_left else tile.left
    right = tile.right[::-1] if side.flips_right else tile.right
    return Tile(tile.graph, left, right, tile.name)


def _seam(right: tuple[int, int], orientation: Orientation) -> tuple[int, int]:
    return right if orientation is Orientation.STRAIGHT else right[::-1]


def join(t: Tile, t2: Tile, orientation: Orientation = Orientation.STRAIGHT) -> Tile:
    """Glue the right wall of ``t`` onto the left wall of ``t2``.

    ``t`` keeps its vertex and edge ids; the remaining vertices and edges of
    ``t2`` are renumbered upwards in ascending id order.
    """
    target = _seam(t.right, orientation)
    vmap = {t2.left[0]: target[0], t2.left[1]: target[1]}
    nxt = max(t.graph.vertices) + 1
    for v in t2.graph.vertices:
        if v not in vmap:
            vmap[v] = nxt
            nxt += 1
    eid = max((e.eid for e in t.graph.edges), default=-1) + 1
    edges = list(t.graph.edges)
    for e in t2.graph.edges:
        edges.append(Edge(eid, vmap[e.a], vmap[e.b]))
        eid += 1
    vertices = set(t.graph.vertices) | set(vmap.values())
    right = (vmap[t2.right[0]], vmap[t2.right[1]])
    return make_tile(MultiGraph(tuple(vertices), tuple(edges)), t.left, right)


@dataclass(frozen=True)
class TiledGraph:
    """A cyclized tile sequence together with where every tile landed.

    ``vertex_maps[i]`` sends tile ``i``'s local vertex ids to global ids and
    ``edge_maps[i]`` does the same for edge ids.
    """

    graph: MultiGraph
    tiles: tuple[Tile, ...]
    orientations: tuple[Orientation, ...]
    vertex_maps: tuple[dict, ...]
    edge_maps: tuple[dict, ...]


def check_sequence(tiles: Sequence[Tile], orientations: Sequence[Orientation]) -> None:
    if len(tiles) < 3:
        raise TooFewTiles(f"a 2-tiled graph needs at least 3 tiles, got {len(tiles)}")
    if len(orientations) != len(tiles):
        raise TileError(f"{len(tiles)} tiles but {len(orientations)} orientations")


def cyclize_layout(tiles: Sequence[Tile], orientations: Sequence[Orientation]) -> TiledGraph:
    """Cyclize and keep the per-tile vertex and edge maps.

    Orientation ``i`` governs the join after tile ``i``; the last one is the
    closing seam.  The left wall of tile ``i`` becomes global vertices
    ``2i, 2i+1``; internal vertices follow tile by tile.
    """
    tiles, orientations = tuple(tiles), tuple(orientations)
    check_sequence(tiles, orientations)
    n = len(tiles)
    vmaps: list[dict] = []
    nxt = 2 * n
    for i, t in enumerate(tiles):
        nb = (2 * ((i + 1) % n), 2 * ((i + 1) % n) + 1)
        y = _seam(nb, orientations[i])
        vm = {t.left[0]: 2 * i, t.left[1]: 2 * i + 1, t.right[0]: y[0], t.right[1]: y[1]}
        for v in t.graph.vertices:
            if v not in vm:
                vm[v] = nxt
                nxt += 1
        vmaps.append(vm)
    edges = []
    emaps: list[dict] = []
    eid = 0
    for t, vm in zip(tiles, vmaps):
        em = {}
        for e in t.graph.edges:
            edges.append(Edge(eid, vm[e.a], vm[e.b]))
            em[e.eid] = eid
            eid += 1
        emaps.append(em)
    graph = MultiGraph(tuple(range(nxt)), tuple(edges))
    return TiledGraph(graph, tiles, orientations, tuple(vmaps), tuple(emaps))


def cyclize(tiles: Sequence[Tile], orientations: Sequence[Orientation]) -> MultiGraph:
    return cyclize_layout(tiles, orientations).graph
