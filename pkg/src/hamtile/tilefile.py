"""Reading and writing the line-oriented tile and graph formats.

Tile blocks::

    tile <name>
    vertices <n>        # vertex ids 0..n-1
    left <v> <v>
    right <v> <v>
    edge <u> <v>        # repeat a line to get a parallel edge
    end

Raw graph blocks use ``graph`` instead of ``tile`` and have no walls.  Edge
ids are assigned in file order.  ``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .graph import MultiGraph, Tile, TileError, make_tile


class TileFileError(ValueError):
    """Malformed tile or graph file; the message carries the line number."""

    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


@dataclass
class _Block:
    kind: str
    name: str
    lineno: int
    n: int | None = None
    left: tuple[int, int] | None = None
    right: tuple[int, int] | None = None
    edges: list | None = None


def _ints(tokens, count, lineno, what):
    if len(tokens) != count:
        raise TileFileError(f"'{what}' expects {count} integer(s)", lineno)
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise TileFileError(f"'{what}' expects integers, got {' '.join(tokens)!r}", lineno) from None


def _blocks(text: str) -> list[_Block]:
    blocks: list[_Block] = []
    cur: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *rest = line.split()
        if word in ("tile", "graph"):
            if cur is not None:
                raise TileFileError(f"'{word}' inside an open block (missing 'end')", lineno)
            if word == "tile" and len(rest) != 1:
                raise TileFileError("'tile' expects exactly one name", lineno)
            name = rest[0] if rest else f"graph{len(blocks)}"
            cur = _Block(word, name, lineno, edges=[])
            continue
        if cur is None:
            raise TileFileError(f"'{word}' outside a tile/graph block", lineno)
        if word == "vertices":
            (cur.n,) = _ints(rest, 1, lineno, word)
            if cur.n < 1:
                raise TileFileError("vertex count must be positive", lineno)
        elif word in ("left", "right"):
            if cur.kind != "tile":
                raise TileFileError(f"'{word}' is only valid in a tile block", lineno)
            setattr(cur, word, _ints(rest, 2, lineno, word))
        elif word == "edge":
            cur.edges.append((_ints(rest, 2, lineno, word), lineno))
        elif word == "end":
            blocks.append(cur)
            cur = None
        else:
            raise TileFileError(f"unknown keyword {word!r}", lineno)
    if cur is not None:
        raise TileFileError(f"block {cur.name!r} is missing 'end'", cur.lineno)
    return blocks


def _graph(b: _Block) -> MultiGraph:
    if b.n is None:
        raise TileFileError(f"block {b.name!r} has no 'vertices' line", b.lineno)
    for (u, v), lineno in b.edges:
        for x in (u, v):
            if not 0 <= x < b.n:
                raise TileFileError(f"vertex {x} out of range 0..{b.n - 1}", lineno)
    try:
        return MultiGraph.from_pairs(b.n, [pair for pair, _ in b.edges])
    except TileError as exc:
        raise TileFileError(str(exc), b.lineno) from None


def parse_tiles(text: str) -> dict[str, Tile]:
    """Parse every ``tile`` block; returns tiles keyed by name in file order."""
    out: dict[str, Tile] = {}
    for b in _blocks(text):
        if b.kind != "tile":
            continue
        if b.left is None or b.right is None:
            raise TileFileError(f"tile {b.name!r} needs both 'left' and 'right'", b.lineno)
        if b.name in out:
            raise TileFileError(f"duplicate tile name {b.name!r}", b.lineno)
        try:
            out[b.name] = make_tile(_graph(b), b.left, b.right, b.name)
        except TileError as exc:
            raise TileFileError(f"tile {b.name!r}: {exc}", b.lineno) from None
    return out


def parse_graphs(text: str) -> list[MultiGraph]:
    """Every block as a bare multigraph (tile walls are dropped)."""
    return [_graph(b) for b in _blocks(text)]


def load_tiles(path: str | Path) -> dict[str, Tile]:
    return parse_tiles(Path(path).read_text())


def load_graph(path: str | Path) -> MultiGraph:
    graphs = parse_graphs(Path(path).read_text())
    if len(graphs) != 1:
        raise TileFileError(f"expected exactly one graph block, found {len(graphs)}")
    return graphs[0]


def write_tiles(tiles: Iterable[Tile], header: Iterable[str] = ()) -> str:
    """Serialize tiles; vertex ids are renumbered to 0..n-1 in sorted order."""
    lines = [f"# {h}" for h in header]
    for t in tiles:
        ids = {v: i for i, v in enumerate(t.graph.vertices)}
        if lines:
            lines.append("")
        lines.append(f"tile {t.name}")
        lines.append(f"vertices {len(ids)}")
        lines.append(f"left {ids[t.left[0]]} {ids[t.left[1]]}")
        lines.append(f"right {ids[t.right[0]]} {ids[t.right[1]]}")
        for e in t.graph.edges:
            lines.append(f"edge {ids[e.a]} {ids[e.b]}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def write_graph(g: MultiGraph) -> str:
    ids = {v: i for i, v in enumerate(g.vertices)}
    lines = ["graph", f"vertices {len(ids)}"]
    lines += [f"edge {ids[e.a]} {ids[e.b]}" for e in g.edges]
    lines.append("end")
    return "\n".join(lines) + "\n"
