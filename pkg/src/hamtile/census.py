"""Local configuration census of a single 2-tile.

A Hamiltonian cycle meets every tile in one of 28 local patterns (C-types).
``census`` counts, for each pattern, the edge subsets of a tile realising it;
``transfer_set`` packs the counts into the traversing matrix R (2x2), the
zigzagging matrix Z (4x4) and the flanking scalars.

Wall indices are 1-based in labels: ``x1, x2`` is the left wall and ``y1, y2``
the right wall.
"""

from __future__ import annotations

import enum
import threading
from collections import defaultdict
from dataclasses import dataclass
from operator import mul
from typing import Iterator, Mapping

from .graph import Side, Tile


class Status(enum.Enum):
    COV = "COV"  # wall vertex lies inside the path
    ISO = "ISO"  # wall vertex is an isolated component

    def __invert__(self) -> "Status":
        return Status.ISO if self is Status.COV else Status.COV

    def __str__(self) -> str:
        return self.value


COV, ISO = Status.COV, Status.ISO


@dataclass(frozen=True, order=True)
class CType:
    kind: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"

    @classmethod
    def parse(cls, text: str) -> "CType":
        text = text.strip()
        if "(" not in text:
            ct = cls(text)
        else:
            kind, rest = text.split("(", 1)
            args = []
            for tok in rest.rstrip(")").split(","):
                tok = tok.strip()
                args.append(int(tok) if tok.isdigit() else Status(tok))
            ct = cls(kind, tuple(args))
        if ct not in ALL_CTYPES:
            raise ValueError(f"unknown C-type {text!r}")
        return ct


TRAV_ALIGNED = CType("TRAV_ALIGNED")
TRAV_TWISTED = CType("TRAV_TWISTED")
FLANK_EMPTY = CType("FLANK_EMPTY")
FLANK_DOUBLE = CType("FLANK_DOUBLE")


def flank_left(s1: Status, s2: Status) -> CType:
    """Single path x1..x2; ``s_i`` says whether y_i is on it."""
    return CType("FLANK_LEFT", (s1, s2))


def flank_right(s1: Status, s2: Status) -> CType:
    """Single path y1..y2; ``s_i`` says whether x_i is on it."""
    return CType("FLANK_RIGHT", (s1, s2))


def zig(j: int, k: int, s_left: Status, s_right: Status) -> CType:
    """Single path x_j..y_k; the statuses describe x_{3-j} and y_{3-k}."""
    return CType("ZIG", (j, k, s_left, s_right))


_STATUSES = (COV, ISO)
ZIG_TYPES = tuple(zig(j, k, a, b) for j in (1, 2) for k in (1, 2) for a in _STATUSES for b in _STATUSES)
TRAV_TYPES = (TRAV_ALIGNED, TRAV_TWISTED)
FLANK_TYPES = (
    (FLANK_EMPTY, FLANK_DOUBLE)
    + tuple(flank_left(a, b) for a in _STATUSES for b in _STATUSES)
    + tuple(flank_right(a, b) for a in _STATUSES for b in _STATUSES)
)
ALL_CTYPES = TRAV_TYPES + FLANK_TYPES + ZIG_TYPES

# Z row r <-> end state (k, status of y_{3-k}); Z column c <-> start state (j, status of x_{3-j}).
Z_ROWS = ((1, COV), (2, COV), (1, ISO), (2, ISO))
Z_COLS = ((1, ISO), (2, ISO), (1, COV), (2, COV))


class CTypeCounts(Mapping):
    """Immutable ``CType -> count`` mapping over all 28 C-types (missing = 0)."""

    __slots__ = ("_counts", "_derived")

    def __init__(self, counts: Mapping[CType, int] | None = None):
        full = {ct: 0 for ct in ALL_CTYPES}
        for ct, n in (counts or {}).items():
            if ct not in full:
                raise KeyError(f"not a C-type: {ct}")
            if n < 0:
                raise ValueError("counts are non-negative")
            full[ct] = int(n)
        self._counts = full
        self._derived: dict = {}  # memo for transfer sets and conjugates

    def __getitem__(self, ct: CType) -> int:
        return self._counts[ct]

    def __iter__(self) -> Iterator[CType]:
        return iter(ALL_CTYPES)

    def __len__(self) -> int:
        return len(ALL_CTYPES)

    def __eq__(self, other) -> bool:
        if isinstance(other, CTypeCounts):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._counts[ct] for ct in ALL_CTYPES))

    def __repr__(self) -> str:
        nz = ", ".join(f"{ct}={n}" for ct, n in self._counts.items() if n)
        return f"CTypeCounts({nz})"

    def nonzero(self) -> dict[CType, int]:
        return {ct: n for ct, n in self._counts.items() if n}

    @property
    def aligned(self) -> int:
        return self._counts[TRAV_ALIGNED]

    @property
    def twisted(self) -> int:
        return self._counts[TRAV_TWISTED]

    @property
    def empty(self) -> int:
        return self._counts[FLANK_EMPTY]

    @property
    def double(self) -> int:
        return self._counts[FLANK_DOUBLE]


Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TransferSet:
    R: Matrix
    Z: Matrix
    flanking: Mapping[CType, int]

    @property
    def row_sum(self) -> int:
        """a_= + a_x: the number of ways to traverse the tile, either parity."""
        return self.R[0][0] + self.R[0][1]


# -- enumeration ---------------------------------------------------------------


class _Frame:
    """Bitmask view of a tile: position 0..3 are x1, x2, y1, y2."""

    def __init__(self, tile: Tile):
        order = list(tile.walls) + list(tile.internal)
        self.index = {v: i for i, v in enumerate(order)}
        self.n = len(order)
        self.full = (1 << self.n) - 1
        self.internal = self.full & ~0b1111
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e in tile.graph.edges:
            a, b = self.index[e.a], self.index[e.b]
            adj[a].append(b)
            adj[b].append(a)
        self.adj = [tuple(sorted(nb)) for nb in adj]

    def paths(self, start: int, allowed: int, stop: int = 0) -> Iterator[tuple[int, int]]:
        """Yield ``(end, vertex_mask)`` for every simple path leaving ``start``.

        One result per edge sequence, so parallel edges multiply.  Paths stay
        inside ``allowed``; vertices in ``stop`` may end a path but are never
        passed through.
        """
        adj = self.adj
        stack = [(start, 1 << start)]
        while stack:
            v, mask = stack.pop()
            if v != start:
                yield v, mask
                if (1 << v) & stop:
                    continue
            for w in adj[v]:
                bit = 1 << w
                if allowed & bit and not mask & bit:
                    stack.append((w, mask | bit))

    def spanning_paths(self, start: int, end: int, allowed: int) -> int:
        """Number of paths start..end visiting exactly the vertices of ``allowed``."""
        return sum(
            1 for v, mask in self.paths(start, allowed, stop=1 << end) if v == end and mask == allowed
        )


_X1, _X2, _Y1, _Y2 = 0, 1, 2, 3


def _status(mask: int, pos: int) -> Status:
    return COV if mask >> pos & 1 else ISO


def _two_paths(f: _Frame, a: int, b: int, c: int, d: int) -> int:
    """Vertex-disjoint paths a..b and c..d covering every vertex of the tile."""
    blocked = (1 << c) | (1 << d)
    first: dict[int, int] = defaultdict(int)
    for v, mask in f.paths(a, f.full & ~blocked, stop=1 << b):
        if v == b:
            first[mask] += 1
    total = 0
    for mask, n in first.items():
        rest = f.full & ~mask
        total += n * f.spanning_paths(c, d, rest)
    return total


def _census(tile: Tile) -> CTypeCounts:
    f = _Frame(tile)
    counts: dict[CType, int] = defaultdict(int)

    # single paths starting on the left wall: zigzagging and left-flanking
    for j, start in ((1, _X1), (2, _X2)):
        other_x = _X2 if j == 1 else _X1
        ends = (1 << _Y1) | (1 << _Y2) | (1 << other_x)
        for v, mask in f.paths(start, f.full):
            if mask & f.internal != f.internal or not (1 << v) & ends:
                continue
            if v == other_x:
                if j == 1:
                    counts[flank_left(_status(mask, _Y1), _status(mask, _Y2))] += 1
                continue
            k = 1 if v == _Y1 else 2
            other_y = _Y2 if k == 1 else _Y1
            counts[zig(j, k, _status(mask, other_x), _status(mask, other_y))] += 1

    # single paths y1..y2: right-flanking
    for v, mask in f.paths(_Y1, f.full, stop=1 << _Y2):
        if v == _Y2 and mask & f.internal == f.internal:
            counts[flank_right(_status(mask, _X1), _status(mask, _X2))] += 1

    counts[TRAV_ALIGNED] = _two_paths(f, _X1, _Y1, _X2, _Y2)
    counts[TRAV_TWISTED] = _two_paths(f, _X1, _Y2, _X2, _Y1)
    counts[FLANK_DOUBLE] = _two_paths(f, _X1, _X2, _Y1, _Y2)
    counts[FLANK_EMPTY] = 1 if f.internal == 0 else 0
    return CTypeCounts(counts)


_cache: dict[tuple, CTypeCounts] = {}
# fast path keyed by object identity; the tile is kept alive so ids stay unique
_by_id: dict[int, tuple[Tile, CTypeCounts]] = {}
_cache_lock = threading.Lock()


def _tile_key(tile: Tile) -> tuple:
    return (tile.graph.vertices, tuple((e.a, e.b) for e in tile.graph.edges), tile.left, tile.right)


def census(tile: Tile) -> CTypeCounts:
    """Count every C-type of ``tile`` by exhaustive path enumeration (cached)."""
    hit = _by_id.get(id(tile))
    if hit is not None and hit[0] is tile:
        return hit[1]
    key = _tile_key(tile)
    result = _cache.get(key)
    if result is None:
        result = _census(tile)
    with _cache_lock:
        result = _cache.setdefault(key, result)
        _by_id[id(tile)] = (tile, result)
    return result


# -- matrices --------------------------------------------------------------------


def transfer_set(counts: CTypeCounts) -> TransferSet:
    hit = counts._derived.get("transfer")
    if hit is not None:
        return hit
    eq, tw = counts[TRAV_ALIGNED], counts[TRAV_TWISTED]
    R = ((eq, tw), (tw, eq))
    Z = tuple(tuple(counts[zig(j, k, sl, sr)] for (j, sl) in Z_COLS) for (k, sr) in Z_ROWS)
    flanking = {ct: counts[ct] for ct in FLANK_TYPES}
    ts = TransferSet(R, Z, flanking)
    counts._derived["transfer"] = ts
    return ts


def _swap(i: int) -> int:
    return 3 - i


def conjugate_census(counts: CTypeCounts, side: Side) -> CTypeCounts:
    """Census of the wall-inverted tile, obtained by relabelling alone."""
    hit = counts._derived.get(side)
    if hit is not None:
        return hit
    fl, fr = side.flips_left, side.flips_right
    out: dict[CType, int] = {}
    for ct, n in counts.items():
        if ct.kind == "ZIG":
            j, k, sl, sr = ct.args
            new = zig(_swap(j) if fl else j, _swap(k) if fr else k, sl, sr)
        elif ct.kind == "FLANK_LEFT":
            s1, s2 = ct.args
            new = flank_left(s2, s1) if fr else ct
        elif ct.kind == "FLANK_RIGHT":
            s1, s2 = ct.args
            new = flank_right(s2, s1) if fl else ct
        elif ct.kind.startswith("TRAV") and fl != fr:
            new = TRAV_TWISTED if ct == TRAV_ALIGNED else TRAV_ALIGNED
        else:
            new = ct
        out[new] = n
    result = CTypeCounts(out)
    counts._derived[side] = result
    return result


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    zero = (0,) * len(cols)
    return tuple(
        tuple(sum(map(mul, row, col)) for col in cols) if any(row) else zero for row in a
    )


def trace(a: Matrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


SWAP2: Matrix = ((0, 1), (1, 0))
X4: Matrix = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
