"""Brute-force Hamiltonian cycles and their classification against a tile ring.

Only meant for small graphs: the enumerator refuses anything above a vertex
budget instead of running for hours.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .census import (
    COV,
    FLANK_DOUBLE,
    FLANK_EMPTY,
    ISO,
    TRAV_ALIGNED,
    TRAV_TWISTED,
    CType,
    flank_left,
    flank_right,
    zig,
)
from .engine import CountBreakdown, TiledGraphSpec
from .graph import MultiGraph, Orientation

DEFAULT_BUDGET = 24


class TooLarge(ValueError):
    """The graph has more vertices than the oracle's budget."""


class UnclassifiableCycle(RuntimeError):
    """A cycle whose per-tile pattern fits none of the five categories."""


class Category(enum.Enum):
    ZIGZAGGING = "zigzagging"
    FLANKING_W1 = "flanking_w1"
    FLANKING_W2 = "flanking_w2"
    FLANKING_W3 = "flanking_w3"
    TRAVERSING = "traversing"


@dataclass(frozen=True)
class CycleClassification:
    category: Category
    ctypes: tuple[CType, ...]


def enumerate_hamiltonian_cycles(g: MultiGraph, max_vertices: int = DEFAULT_BUDGET) -> frozenset:
    """All Hamiltonian cycles of ``g`` as sorted edge-id tuples.

    Backtracking is anchored at the smallest vertex; each cycle is reported once
    by requiring its first edge id to be smaller than its closing edge id.  Two
    vertices joined by two parallel edges form a (2-vertex) Hamiltonian cycle.
    """
    n = g.num_vertices
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds the oracle budget of {max_vertices}")
    if n < 2:
        return frozenset()
    index = {v: i for i, v in enumerate(g.vertices)}
    adj = [[] for _ in range(n)]
    for e in g.edges:
        a, b = index[e.a], index[e.b]
        adj[a].append((e.eid, b))
        adj[b].append((e.eid, a))
    full = (1 << n) - 1
    found = set()
    path: list[int] = []

    def extend(v: int, seen: int) -> None:
        if seen == full:
            for eid, w in adj[v]:
                if w == 0 and path[0] < eid:
                    found.add(tuple(sorted(path + [eid])))
            return
        for eid, w in adj[v]:
            if not seen >> w & 1:
                path.append(eid)
                extend(w, seen | (1 << w))
                path.pop()

    extend(0, 1)
    return frozenset(found)


def tile_pattern(tile, local_edges: Iterable[int]) -> CType:
    """The C-type of a set of edge ids of ``tile`` (local ids)."""
    deg: Counter = Counter()
    nbrs: dict[int, list[int]] = {}
    for eid in local_edges:
        e = tile.graph.edge(eid)
        for a, b in ((e.a, e.b), (e.b, e.a)):
            deg[a] += 1
            nbrs.setdefault(a, []).append(b)
    x1, x2 = tile.left
    y1, y2 = tile.right
    if not deg:
        if tile.internal:
            raise UnclassifiableCycle("empty intersection with a tile that has internal vertices")
        return FLANK_EMPTY
    if any(deg[v] == 0 for v in tile.internal) or any(d > 2 for d in deg.values()):
        raise UnclassifiableCycle("tile intersection is not a union of paths covering the interior")
    ends = sorted(v for v, d in deg.items() if d == 1)
    if any(v not in (x1, x2, y1, y2) for v in ends):
        raise UnclassifiableCycle("a path ends at an internal vertex")

    # pair up the path ends by walking each path
    pairs = []
    walked = set()
    todo = set(ends)
    while todo:
        start = min(todo)
        prev, cur = None, start
        walked.add(cur)
        while prev is None or deg[cur] == 2:
            prev, cur = cur, next(w for w in nbrs[cur] if w != prev)
            walked.add(cur)
        pairs.append(frozenset((start, cur)))
        todo -= {start, cur}
    if len(walked) != len(deg):
        raise UnclassifiableCycle("tile intersection contains a closed cycle")

    def st(v):
        return COV if deg[v] else ISO

    if len(pairs) == 2:
        ps = set(pairs)
        if ps == {frozenset((x1, y1)), frozenset((x2, y2))}:
            return TRAV_ALIGNED
        if ps == {frozenset((x1, y2)), frozenset((x2, y1))}:
            return TRAV_TWISTED
        if ps == {frozenset((x1, x2)), frozenset((y1, y2))}:
            return FLANK_DOUBLE
        raise UnclassifiableCycle("two paths with unexpected ends")
    if len(pairs) != 1:
        raise UnclassifiableCycle(f"{len(pairs)} paths inside one tile")
    (p,) = pairs
    if p == {x1, x2}:
        return flank_left(st(y1), st(y2))
    if p == {y1, y2}:
        return flank_right(st(x1), st(x2))
    j = 1 if x1 in p else 2
    k = 1 if y1 in p else 2
    return zig(j, k, st(x2 if j == 1 else x1), st(y2 if k == 1 else y1))


def _kind(ct: CType) -> str:
    if ct in (TRAV_ALIGNED, TRAV_TWISTED):
        return "T"
    return {"ZIG": "Z", "FLANK_LEFT": "L", "FLANK_RIGHT": "R"}.get(ct.kind, ct.kind)


def _match(ctypes: tuple[CType, ...], orientations) -> Category:
    n = len(ctypes)
    kinds = [_kind(c) for c in ctypes]
    if all(k == "Z" for k in kinds):
        return Category.ZIGZAGGING
    if all(k == "T" for k in kinds):
        flips = sum(c == TRAV_TWISTED for c in ctypes) + sum(o is Orientation.SWAPPED for o in orientations)
        if flips % 2 == 1:
            return Category.TRAVERSING
        raise UnclassifiableCycle("traversing pattern with even parity closes into two cycles")
    others = [i for i, k in enumerate(kinds) if k != "T"]
    pattern = {
        ("FLANK_DOUBLE",): Category.FLANKING_W1,
        ("L", "R"): Category.FLANKING_W2,
        ("L", "FLANK_EMPTY", "R"): Category.FLANKING_W3,
    }
    for rot in range(n):
        # the window must be a contiguous run starting at some tile
        window = [(rot + k) % n for k in range(len(others))]
        if sorted(window) == others:
            key = tuple(kinds[i] for i in window)
            if key in pattern:
                return pattern[key]
    raise UnclassifiableCycle(f"C-type sequence {[str(c) for c in ctypes]} matches no category")


def classify_cycle(cycle: Iterable[int], spec: TiledGraphSpec, layout=None) -> CycleClassification:
    """Classify a Hamiltonian cycle of ``spec``'s cyclization (edge ids are global)."""
    layout = layout or spec.layout()
    chosen = set(cycle)
    ctypes = []
    for tile, emap in zip(layout.tiles, layout.edge_maps):
        local = [le for le, ge in emap.items() if ge in chosen]
        ctypes.append(tile_pattern(tile, local))
    ctypes = tuple(ctypes)
    return CycleClassification(_match(ctypes, spec.orientations), ctypes)


def oracle_breakdown(spec: TiledGraphSpec, max_vertices: int = DEFAULT_BUDGET) -> CountBreakdown:
    """Enumerate and classify every Hamiltonian cycle of ``spec``'s cyclization."""
    layout = spec.layout()
    tally: Counter = Counter()
    for cyc in enumerate_hamiltonian_cycles(layout.graph, max_vertices):
        tally[classify_cycle(cyc, spec, layout).category] += 1
    return CountBreakdown(
        tally[Category.TRAVERSING],
        tally[Category.FLANKING_W1],
        tally[Category.FLANKING_W2],
        tally[Category.FLANKING_W3],
        tally[Category.ZIGZAGGING],
    )
