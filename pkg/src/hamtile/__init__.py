"""Exact Hamiltonian cycle counting for cyclized sequences of 2-tiles."""

from importlib import resources
from pathlib import Path

from .census import ALL_CTYPES, CType, CTypeCounts, census, transfer_set
from .engine import CountBreakdown, TiledGraphSpec, count_all
from .graph import MultiGraph, Orientation, Side, Tile, cyclize, invert_tile, join, make_tile
from .tilefile import load_tiles, parse_tiles

__version__ = "0.1.0"


def data_path(name: str) -> Path:
    """Path of a bundled data file (``library.tl`` or ``basic.tl``)."""
    return Path(str(resources.files(__name__) / "data" / name))


def basic_tiles() -> dict[str, Tile]:
    """The small tiles R0, P0, X0, K1 and W1 used in examples and tests."""
    return load_tiles(data_path("basic.tl"))


__all__ = [
    "ALL_CTYPES",
    "CType",
    "CTypeCounts",
    "CountBreakdown",
    "MultiGraph",
    "Orientation",
    "Side",
    "Tile",
    "TiledGraphSpec",
    "basic_tiles",
    "census",
    "count_all",
    "cyclize",
    "data_path",
    "invert_tile",
    "join",
    "load_tiles",
    "make_tile",
    "parse_tiles",
    "transfer_set",
]
