"""Counting Hamiltonian cycles of a cyclized tile sequence.

Every Hamiltonian cycle of a 2-tiled graph is exactly one of:

* traversing  -- two strands run through every tile and swap an odd number of
  times in total, so they close into a single cycle;
* flanking    -- the cycle turns around inside a window of 1, 2 or 3
  consecutive tiles and runs through the rest of the ring as two strands;
* zigzagging  -- a single strand snakes through every tile.

The three counters below are linear in the number of tiles (``count_flanking``
uses prefix/suffix products of the traversal row sums).  ``count_flanking_quadratic``
recomputes the remaining-chain factor per window by an explicit matrix chain and
only exists to cross-check the fast version.

Orientation handling: SWAPPED joins are pushed to the end of the ring by
inverting both walls of every tile that follows an odd number of swaps, which
leaves a single seam permutation to apply at closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .census import (
    FLANK_DOUBLE,
    FLANK_EMPTY,
    COV,
    ISO,
    CTypeCounts,
    Matrix,
    X4,
    census,
    conjugate_census,
    flank_left,
    flank_right,
    matmul,
    trace,
    transfer_set,
)
from .graph import Orientation, Side, Tile, check_sequence, cyclize_layout

STRAIGHT, SWAPPED = Orientation.STRAIGHT, Orientation.SWAPPED


@dataclass(frozen=True)
class TiledGraphSpec:
    """A ring of tiles; ``orientations[i]`` is the join after tile ``i``."""

    tiles: tuple[Tile, ...]
    orientations: tuple[Orientation, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tiles", tuple(self.tiles))
        object.__setattr__(self, "orientations", tuple(self.orientations))
        check_sequence(self.tiles, self.orientations)

    @classmethod
    def ring(cls, tiles: Sequence[Tile], twist: bool = False) -> "TiledGraphSpec":
        """All joins straight; ``twist`` swaps the closing seam."""
        n = len(tiles)
        return cls(tuple(tiles), (STRAIGHT,) * (n - 1) + ((SWAPPED if twist else STRAIGHT),))

    def __len__(self) -> int:
        return len(self.tiles)

    def rotated(self, k: int) -> "TiledGraphSpec":
        k %= len(self.tiles)
        return TiledGraphSpec(self.tiles[k:] + self.tiles[:k], self.orientations[k:] + self.orientations[:k])

    @property
    def num_vertices(self) -> int:
        return sum(t.graph.num_vertices for t in self.tiles) - 2 * len(self.tiles)

    def layout(self):
        return cyclize_layout(self.tiles, self.orientations)

    def graph(self):
        return self.layout().graph


@dataclass(frozen=True)
class CountBreakdown:
    traversing: int
    flanking_w1: int
    flanking_w2: int
    flanking_w3: int
    zigzagging: int

    @property
    def flanking(self) -> int:
        return self.flanking_w1 + self.flanking_w2 + self.flanking_w3

    @property
    def total(self) -> int:
        return self.traversing + self.flanking + self.zigzagging

    def as_dict(self) -> dict:
        return {
            "traversing": self.traversing,
            "flanking": self.flanking,
            "flanking_w1": self.flanking_w1,
            "flanking_w2": self.flanking_w2,
            "flanking_w3": self.flanking_w3,
            "zigzagging": self.zigzagging,
            "total": self.total,
        }


# -- orientation normalisation -------------------------------------------------


def normalized(spec: TiledGraphSpec) -> tuple[list[CTypeCounts], bool]:
    """Per-tile censuses with every internal swap absorbed, plus the seam flag.

    Tile ``i`` is wall-inverted when an odd number of SWAPPED joins precede it;
    the returned flag is True when the closing seam ends up swapped.
    """
    cache: dict[tuple[int, bool], CTypeCounts] = {}
    out = []
    flipped = False
    for tile, o in zip(spec.tiles, spec.orientations):
        key = (id(tile), flipped)
        c = cache.get(key)
        if c is None:
            c = census(tile)
            if flipped:
                c = conjugate_census(c, Side.BOTH)
            cache[key] = c
        out.append(c)
        flipped ^= o is SWAPPED
    return out, flipped


# -- traversing -----------------------------------------------------------------


def traversal_vector(counts: Sequence[CTypeCounts]) -> tuple[int, int]:
    """(c_even, c_odd) after the whole chain, starting from (1, 0)."""
    even, odd = 1, 0
    for c in counts:
        eq, tw = c.aligned, c.twisted
        even, odd = eq * even + tw * odd, tw * even + eq * odd
    return even, odd


def count_traversing(spec: TiledGraphSpec) -> int:
    counts, seam = normalized(spec)
    even, odd = traversal_vector(counts)
    # the strands close into one cycle iff the total number of swaps is odd
    return even if seam else odd


# -- zigzagging -----------------------------------------------------------------


def chain_product(mats: Sequence[Matrix]) -> Matrix:
    """``mats[-1] @ ... @ mats[0]`` by a balanced tree (keeps big-int sizes even)."""
    if not mats:
        raise ValueError("empty chain")
    level = list(mats)
    while len(level) > 1:
        nxt = [matmul(level[i + 1], level[i]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def zig_trace(product: Matrix, seam_swapped: bool) -> int:
    return trace(matmul(X4, product)) if seam_swapped else trace(product)


def count_zigzagging(spec: TiledGraphSpec) -> int:
    counts, seam = normalized(spec)
    return zig_trace(chain_product([transfer_set(c).Z for c in counts]), seam)


# -- flanking -------------------------------------------------------------------

_PAIRS = ((COV, COV), (COV, ISO), (ISO, COV), (ISO, ISO))
# index of the partner status pair, straight and across a swapped join
_PARTNER = tuple(_PAIRS.index((~a, ~b)) for a, b in _PAIRS)
_PARTNER_SWAPPED = tuple(_PAIRS.index((~b, ~a)) for a, b in _PAIRS)


def _flank_vectors(c: CTypeCounts) -> tuple[tuple[int, ...], tuple[int, ...]]:
    hit = c._derived.get("flank")
    if hit is None:
        hit = (tuple(c[flank_left(*p)] for p in _PAIRS), tuple(c[flank_right(*p)] for p in _PAIRS))
        c._derived["flank"] = hit
    return hit


def pair_turn(left: CTypeCounts, right: CTypeCounts, swapped: bool) -> int:
    """Turn-arounds split over two adjacent tiles: x1..x2 path in ``left``
    (the window's first tile) and y1..y2 path in ``right``.

    A right-wall vertex of ``left`` that its path covers must be isolated in
    ``right`` and vice versa; a swapped join exchanges the two indices.
    """
    fl = _flank_vectors(left)[0]
    fr = _flank_vectors(right)[1]
    partner = _PARTNER_SWAPPED if swapped else _PARTNER
    return sum(a * fr[partner[i]] for i, a in enumerate(fl) if a)


def triple_turn(a: CTypeCounts, b: CTypeCounts, c: CTypeCounts) -> int:
    return a[flank_left(COV, COV)] * b[FLANK_EMPTY] * c[flank_right(COV, COV)]


def window_factors(counts: Sequence[CTypeCounts], seam: bool) -> tuple[list[int], list[int], list[int]]:
    """Turn-around counts of the width-1/2/3 windows starting at each tile."""
    n = len(counts)
    w1 = [c[FLANK_DOUBLE] for c in counts]
    w2 = [pair_turn(counts[i], counts[(i + 1) % n], seam and i == n - 1) for i in range(n)]
    w3 = [triple_turn(counts[i], counts[(i + 1) % n], counts[(i + 2) % n]) for i in range(n)]
    return w1, w2, w3


def _outside_products(row: Sequence[int], width: int) -> list[int]:
    """For each start i, the product of ``row`` over the tiles not in window [i, i+width)."""
    n = len(row)
    if width >= n:
        return [1] * n
    prefix = [1] * (n + 1)
    for i, v in enumerate(row):
        prefix[i + 1] = prefix[i] * v
    suffix = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * row[i]
    out = []
    for i in range(n):
        end = i + width
        if end <= n:
            out.append(prefix[i] * suffix[end])
        else:
            # wrapped window: the outside is the contiguous run end-n .. i-1
            p = 1
            for j in range(end - n, i):
                p *= row[j]
            out.append(p)
    return out


def count_flanking(spec: TiledGraphSpec) -> tuple[int, int, int]:
    counts, seam = normalized(spec)
    row = [c.aligned + c.twisted for c in counts]
    result = []
    for width, factors in zip((1, 2, 3), window_factors(counts, seam)):
        if not any(factors):
            result.append(0)
            continue
        rest = _outside_products(row, width)
        result.append(sum(f * r for f, r in zip(factors, rest) if f))
    return tuple(result)


def count_flanking_quadratic(spec: TiledGraphSpec) -> tuple[int, int, int]:
    """Reference flanking counter: per window, run the traversal chain over the
    remaining tiles and add both parities.  O(n^2); for cross-checks only."""
    counts, seam = normalized(spec)
    n = len(counts)
    result = []
    for width, factors in zip((1, 2, 3), window_factors(counts, seam)):
        total = 0
        for i, f in enumerate(factors):
            if not f:
                continue
            rest = [counts[(i + width + k) % n] for k in range(n - width)] if width < n else []
            even, odd = traversal_vector(rest)
            total += f * (even + odd)
        result.append(total)
    return tuple(result)


def count_all(spec: TiledGraphSpec) -> CountBreakdown:
    counts, seam = normalized(spec)
    even, odd = traversal_vector(counts)
    w1, w2, w3 = count_flanking(spec)
    zz = zig_trace(chain_product([transfer_set(c).Z for c in counts]), seam)
    return CountBreakdown(even if seam else odd, w1, w2, w3, zz)
