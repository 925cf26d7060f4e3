"""Regenerate ``src/hamtile/data/library.tl`` from the ladder templates.

Every library tile is a "ladder": a top row x1 .. y1, a bottom row x2 .. y2 and
rungs between them.  Letters translate into rows, digons and rungs:

* top row ``x1 - u - v [= w] - y1``; D, B and H double ``u - v``; I adds ``w``
  behind a digon ``v = w``; frame dL doubles the last edge into y1.
* bottom row ``x2 - y2`` (doubled for D) or ``x2 - q - y2`` for A, V, B and H
  (``x2 = q`` doubled for B).
* rungs: ``u - x2`` always, ``tail - y2`` unless I is present, plus one rung
  per letter (see ``_rungs``).

Because every vertex sits on one of the two rows and the rungs never let a
top-to-top path touch the bottom row, aligned traversals are exactly the row
paths, so a_= = 2^(number of doubled row edges) = 2^(#B+#D+#H+#I+#d) and the
twisted count is zero.  Combinations that break an identity, exceed the frame
bounds on Z, or carry no doubling letter are left out.

Run from the repository root:  python3 tools/build_library.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from hamtile.alphabet import TileSignature, check_library_tile  # noqa: E402
from hamtile.tilefile import write_tiles  # noqa: E402
from hamtile.graph import MultiGraph, make_tile  # noqa: E402

X1, X2, Y1, Y2, U, V = 0, 1, 2, 3, 4, 5


def ladder(sig: TileSignature):
    pt, ident, pb, fr = sig.top, sig.ident, sig.bottom, sig.frame
    nxt = 6
    edges = [(X1, U), (U, V)]
    if pt in ("D", "B", "H"):
        edges.append((U, V))
    tail = V
    if ident:
        w = nxt
        nxt += 1
        edges += [(V, w), (V, w)]
        tail = w
    edges.append((tail, Y1))
    if fr == "dL":
        edges.append((tail, Y1))

    q = None
    if pb in ("A", "V", "B") or pt == "H":
        q = nxt
        nxt += 1
        edges += [(X2, q), (q, Y2)]
        if pb == "B":
            edges.append((X2, q))
    else:
        edges.append((X2, Y2))
        if pb == "D":
            edges.append((X2, Y2))
    edges += _rungs(pt, ident, pb, tail, q)
    return make_tile(MultiGraph.from_pairs(nxt, edges), (X1, X2), (Y1, Y2), str(sig))


def _rungs(pt, ident, pb, tail, q):
    mid = q if q is not None else None
    out = [(U, X2)]
    if not ident:
        out.append((tail, Y2))
    if pt == "A":
        out.append((U, mid if mid is not None else Y2))
    elif pt == "V":
        out.append((V, X2) if ident else (V, mid if mid is not None else X2))
    elif pt == "H":
        out.append((U, q))
    if pb == "A":
        out.append((q, U))
    elif pb == "V":
        out.append((q, tail))
    elif pb == "B":
        out.append((q, V))
    return out


def frame_shape_ok(tile) -> bool:
    """Z column 4 zero; dL: row 2 zero, entries <= 4; L: entries <= 2."""
    from hamtile.census import census, transfer_set

    Z = transfer_set(census(tile)).Z
    if any(row[3] for row in Z):
        return False
    dl = tile.name.endswith("dL")
    if dl and any(Z[1]):
        return False
    return max(max(r) for r in Z) <= (4 if dl else 2)


def main() -> None:
    kept = []
    for sig in TileSignature.grammar():
        if sig.multiplier_letters() == 0:
            continue
        tile = ladder(sig)
        if check_library_tile(sig, tile) or not frame_shape_ok(tile):
            continue
        kept.append(tile)
    out = ROOT / "src" / "hamtile" / "data" / "library.tl"
    header = [
        "Bundled tile library keyed by signature.",
        "Generated by tools/build_library.py; every tile is a ladder whose",
        "letters decide digons and rungs.  Wall order: left x1 x2, right y1 y2.",
    ]
    out.write_text(write_tiles(kept, header=header))
    print(f"wrote {len(kept)} tiles to {out.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
