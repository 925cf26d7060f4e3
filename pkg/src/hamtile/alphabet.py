"""Tile signatures of large 2-crossing-critical graphs and their fast counters.

A tile signature is ``P_t [I] [P_b] Fr``: a top-path letter (A, V, D, B or H),
an optional identification mark ``I``, an optional bottom-path letter
(A, V, D or B) and a frame (``L`` or ``dL``).  A graph signature is an odd
number (at least 3) of tile signatures.  The graph it describes alternates
plain and wall-inverted tiles and closes with a twisted seam.

The closed forms used by ``count_cc``:

* traversing = 2^(#B + #D + #H + #I + #d), checked against the product of the
  per-tile aligned counts;
* flanking   = THC * sum_i (a_par^i * a_eq^{i+1} + a_turn^{i,i+1}) / (a_eq^i * a_eq^{i+1}),
  evaluated exactly with fractions grouped by distinct neighbouring pairs;
* zigzagging = tr((X Z_n) ... (X Z_1)) over the plain tile matrices.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping, Sequence

import gmpy2

from .census import (
    FLANK_DOUBLE,
    FLANK_EMPTY,
    X4,
    CTypeCounts,
    Matrix,
    census,
    conjugate_census,
    matmul,
    trace,
    transfer_set,
)
from .engine import CountBreakdown, TiledGraphSpec, pair_turn
from .graph import Orientation, Side, Tile, invert_tile
from .tilefile import parse_tiles

TOP_LETTERS = ("A", "V", "D", "B", "H")
BOTTOM_LETTERS = ("A", "V", "D", "B")
FRAMES = ("L", "dL")
LETTERS = ("B", "D", "A", "V", "H", "I", "d")
MULTIPLIERS = ("B", "D", "H", "I", "d")
ROTATION_MARK = "~"

# Z matrix the DDdL tile must reproduce
DDDL_Z: Matrix = ((0, 0, 4, 0), (0, 0, 0, 0), (4, 4, 0, 0), (2, 2, 0, 0))


class SignatureError(ValueError):
    pass


class UnknownLetter(SignatureError):
    pass


class MalformedToken(SignatureError):
    pass


class EvenTileCount(SignatureError):
    pass


class TooShort(SignatureError):
    pass


class IllegalCombination(SignatureError):
    pass


class DivisionByZeroCensus(ArithmeticError):
    """A library tile with no aligned traversal; the library is corrupt."""


class LibraryError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TileSignature:
    top: str
    ident: bool = False
    bottom: str | None = None
    frame: str = "L"
    rotated: bool = False

    def __post_init__(self) -> None:
        if self.top not in TOP_LETTERS:
            raise UnknownLetter(f"top path letter must be one of {TOP_LETTERS}, got {self.top!r}")
        if self.bottom is not None and self.bottom not in BOTTOM_LETTERS:
            raise UnknownLetter(f"bottom path letter must be one of {BOTTOM_LETTERS}, got {self.bottom!r}")
        if self.frame not in FRAMES:
            raise UnknownLetter(f"frame must be L or dL, got {self.frame!r}")
        if self.top == "H" and (self.ident or self.bottom is not None):
            raise IllegalCombination("the H picture takes neither I nor a bottom path")

    def __str__(self) -> str:
        s = self.top + ("I" if self.ident else "") + (self.bottom or "") + self.frame
        return s + (ROTATION_MARK if self.rotated else "")

    def letters(self) -> Counter:
        c = Counter({self.top: 1})
        if self.ident:
            c["I"] += 1
        if self.bottom:
            c[self.bottom] += 1
        if self.frame == "dL":
            c["d"] += 1
        return c

    def multiplier_letters(self) -> int:
        c = self.letters()
        return sum(c[x] for x in MULTIPLIERS)

    @classmethod
    def grammar(cls) -> Iterator["TileSignature"]:
        """Every combination the grammar allows (rotations excluded)."""
        for top in TOP_LETTERS:
            for ident in (False, True):
                for bottom in (None,) + BOTTOM_LETTERS:
                    if top == "H" and (ident or bottom):
                        continue
                    for frame in FRAMES:
                        yield cls(top, ident, bottom, frame)


@dataclass(frozen=True)
class GraphSignature:
    tiles: tuple[TileSignature, ...]

    def __post_init__(self) -> None:
        n = len(self.tiles)
        if n % 2 == 0:
            raise EvenTileCount(f"a graph signature needs an odd number of tiles, got {n}")
        if n < 3:
            raise TooShort(f"a graph signature needs at least 3 tiles, got {n}")

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tiles)

    def __len__(self) -> int:
        return len(self.tiles)

    @property
    def m(self) -> int:
        return len(self.tiles) // 2


# -- parsing ---------------------------------------------------------------------

_KNOWN = set("AVDBHIdL" + ROTATION_MARK)
_SPLIT = re.compile(r"[^L]*L" + re.escape(ROTATION_MARK) + "?")


def parse_token(tok: str) -> TileSignature:
    """Parse one tile signature, right to left: frame, bottom, I, top."""
    for ch in tok:
        if ch not in _KNOWN:
            raise UnknownLetter(f"unknown letter {ch!r} in {tok!r}")
    rest = tok
    rotated = rest.endswith(ROTATION_MARK)
    if rotated:
        rest = rest[:-1]
    if rest.endswith("dL"):
        frame, rest = "dL", rest[:-2]
    elif rest.endswith("L"):
        frame, rest = "L", rest[:-1]
    else:
        raise MalformedToken(f"{tok!r} does not end in a frame (L or dL)")
    bottom = None
    if len(rest) >= 2 and rest[-1] in BOTTOM_LETTERS:
        bottom, rest = rest[-1], rest[:-1]
    ident = len(rest) >= 2 and rest[-1] == "I"
    if ident:
        rest = rest[:-1]
    if len(rest) != 1 or rest not in TOP_LETTERS:
        raise MalformedToken(f"cannot read {tok!r} as top [I] [bottom] frame")
    return TileSignature(rest, ident, bottom, frame, rotated)


def tokenize(text: str) -> list[str]:
    tokens = []
    for chunk in text.split():
        parts = _SPLIT.findall(chunk)
        if "".join(parts) != chunk:
            # leftover text after the last frame letter
            tail = chunk[len("".join(parts)):]
            for ch in tail:
                if ch not in _KNOWN:
                    raise UnknownLetter(f"unknown letter {ch!r} in {chunk!r}")
            raise MalformedToken(f"{tail!r} in {chunk!r} has no frame")
        tokens.extend(parts)
    return tokens


def parse_signature(text: str, library: "TileLibrary | None" = None) -> GraphSignature:
    sig = GraphSignature(tuple(parse_token(t) for t in tokenize(text)))
    if library is not None:
        for t in sig.tiles:
            if str(t) not in library:
                raise IllegalCombination(f"tile {t} is not in the library")
    return sig


# -- letter counts ---------------------------------------------------------------


@dataclass(frozen=True)
class LetterCounts:
    total: Mapping[str, int]
    per_tile: tuple[Mapping[str, int], ...]
    # per_position[j][p] is the letter at position p ("top"/"bottom") of tile j, or None
    per_position: tuple[Mapping[str, str | None], ...]

    def __getitem__(self, letter: str) -> int:
        return self.total.get(letter, 0)

    def tile(self, j: int, letter: str) -> int:
        return self.per_tile[j].get(letter, 0)

    def at(self, j: int, position: str, letter: str) -> int:
        return int(self.per_position[j][position] == letter)

    @property
    def thc_exponent(self) -> int:
        return sum(self[x] for x in MULTIPLIERS)


def letter_counts(sig: GraphSignature | Sequence[TileSignature]) -> LetterCounts:
    tiles = sig.tiles if isinstance(sig, GraphSignature) else tuple(sig)
    per_tile = tuple(t.letters() for t in tiles)
    total: Counter = Counter()
    # count distinct tiles once each; signatures of 10^5 tiles use few kinds
    for t, k in Counter(tiles).items():
        for letter, c in t.letters().items():
            total[letter] += c * k
    per_pos = tuple({"top": t.top, "bottom": t.bottom} for t in tiles)
    return LetterCounts({x: total[x] for x in LETTERS}, per_tile, per_pos)


# -- library ----------------------------------------------------------------------


class TileLibrary(Mapping):
    """Signature key -> tile, validated at load."""

    def __init__(self, tiles: Mapping[str, Tile], validate: bool = True):
        self._tiles = dict(tiles)
        self._sigs = {}
        for key in self._tiles:
            try:
                self._sigs[key] = parse_token(key)
            except SignatureError as exc:
                raise LibraryError(f"library key {key!r} is not a tile signature: {exc}") from None
        if validate:
            problems = [p for key, t in self._tiles.items() for p in check_library_tile(self._sigs[key], t)]
            if problems:
                raise LibraryError("library validation failed:\n  " + "\n  ".join(problems))

    def __getitem__(self, key) -> Tile:
        return self._tiles[str(key)]

    def __iter__(self):
        return iter(self._tiles)

    def __len__(self) -> int:
        return len(self._tiles)

    def signatures(self) -> list[TileSignature]:
        return sorted(self._sigs.values(), key=str)

    def subset(self, keys: Sequence[str]) -> "TileLibrary":
        return TileLibrary({k: self._tiles[k] for k in keys}, validate=False)


def check_library_tile(sig: TileSignature, tile: Tile) -> list[str]:
    """Identities every library tile must satisfy; returns the violations."""
    c = census(tile)
    bad = []
    if c.twisted != 0:
        bad.append(f"{sig}: twisted traversal count {c.twisted}, expected 0")
    want = 2 ** sig.multiplier_letters()
    if c.aligned != want:
        bad.append(f"{sig}: aligned traversal count {c.aligned}, expected {want}")
    if c.empty != 0:
        bad.append(f"{sig}: tile has no internal vertex")
    if str(sig) == "DDdL" and transfer_set(c).Z != DDDL_Z:
        bad.append(f"{sig}: Z matrix {transfer_set(c).Z} differs from {DDDL_Z}")
    return bad


def default_library_path() -> Path:
    return Path(str(resources.files("hamtile") / "data" / "library.tl"))


_default: TileLibrary | None = None


def load_library(path: str | Path | None = None, validate: bool = True) -> TileLibrary:
    """Load a library file; ``None`` or ``"default"`` gives the bundled one (cached)."""
    global _default
    if path is None or str(path) == "default":
        if _default is None:
            _default = TileLibrary(parse_tiles(default_library_path().read_text()), validate=validate)
        return _default
    return TileLibrary(parse_tiles(Path(path).read_text()), validate=validate)


# -- graph construction ------------------------------------------------------------


def _lookup(lib: Mapping[str, Tile], t: TileSignature) -> Tile:
    try:
        return lib[str(t)]
    except KeyError:
        raise IllegalCombination(f"tile {t} is not in the library") from None


def build_spec(sig: GraphSignature, lib: Mapping[str, Tile]) -> TiledGraphSpec:
    """Odd positions wall-inverted, straight joins, twisted closing seam."""
    plain = {str(t): _lookup(lib, t) for t in set(sig.tiles)}
    inverted = {k: invert_tile(t, Side.BOTH) for k, t in plain.items()}
    tiles = tuple((inverted if i % 2 else plain)[str(t)] for i, t in enumerate(sig.tiles))
    n = len(tiles)
    return TiledGraphSpec(tiles, (Orientation.STRAIGHT,) * (n - 1) + (Orientation.SWAPPED,))


# -- closed forms ------------------------------------------------------------------


def thc_closed_form(sig: GraphSignature) -> int:
    return 1 << letter_counts(sig).thc_exponent


def _placed_census(lib, t: TileSignature, odd: bool, cache: dict) -> CTypeCounts:
    key = (t, odd)
    c = cache.get(key)
    if c is None:
        c = census(_lookup(lib, t))
        if odd:
            c = conjugate_census(c, Side.BOTH)
        cache[key] = c
    return c


def _aligned_product(sig: GraphSignature, lib) -> int:
    cache: dict = {}
    out = gmpy2.mpz(1)
    for t, k in Counter(sig.tiles).items():
        a = _placed_census(lib, t, False, cache).aligned
        if a == 0:
            raise DivisionByZeroCensus(f"tile {t} has no aligned traversal")
        out *= gmpy2.mpz(a) ** k
    return int(out)


def _flanking_sums(sig: GraphSignature, lib) -> tuple[Fraction, Fraction]:
    """The per-window sums of the flanking formula, split by window width."""
    cache: dict = {}
    tiles = sig.tiles
    n = len(tiles)
    # a tile's census depends on its parity; a pair also on whether it spans the seam
    pairs = Counter(
        (tiles[i], i % 2, tiles[(i + 1) % n], (i + 1) % n % 2, i == n - 1) for i in range(n)
    )
    s1 = Fraction(0)
    s2 = Fraction(0)
    for (t, p, u, q, seam), k in pairs.items():
        ci = _placed_census(lib, t, bool(p), cache)
        cj = _placed_census(lib, u, bool(q), cache)
        if ci.aligned == 0 or cj.aligned == 0:
            raise DivisionByZeroCensus(f"tile {t if ci.aligned == 0 else u} has no aligned traversal")
        s1 += Fraction(k * ci[FLANK_DOUBLE], ci.aligned)
        s2 += Fraction(k * pair_turn(ci, cj, seam), ci.aligned * cj.aligned)
    return s1, s2


def _scaled(thc: int, s: Fraction) -> int:
    v = thc * s
    if v.denominator != 1:
        raise ArithmeticError(f"flanking count is not an integer: {v}")
    return int(v)


def fhc_formula(sig: GraphSignature, lib: Mapping[str, Tile]) -> int:
    s1, s2 = _flanking_sums(sig, lib)
    return _scaled(thc_closed_form(sig), s1 + s2)


def _xz(lib, t: TileSignature) -> Matrix:
    Z = transfer_set(census(_lookup(lib, t))).Z
    return tuple(tuple(gmpy2.mpz(v) for v in row) for row in matmul(X4, Z))


def _tree_product(mats: list) -> Matrix:
    while len(mats) > 1:
        nxt = [matmul(mats[i + 1], mats[i]) for i in range(0, len(mats) - 1, 2)]
        if len(mats) % 2:
            nxt.append(mats[-1])
        mats = nxt
    return mats[0]


def twisted_product(sig: GraphSignature, lib: Mapping[str, Tile]) -> Matrix:
    """(X Z_n) ... (X Z_1) over the uninverted tile matrices (plain ints)."""
    kinds = {t: _xz(lib, t) for t in set(sig.tiles)}
    prod = _tree_product([kinds[t] for t in sig.tiles])
    return tuple(tuple(int(v) for v in row) for row in prod)


def zhc_trace(sig: GraphSignature, lib: Mapping[str, Tile]) -> int:
    """tr((X Z_n) ... (X Z_1)) over the uninverted tile matrices."""
    return trace(twisted_product(sig, lib))


def count_cc(sig: GraphSignature, lib: Mapping[str, Tile]) -> CountBreakdown:
    """All three counts for a signature graph, linear in the number of tiles."""
    thc = thc_closed_form(sig)
    prod = _aligned_product(sig, lib)
    if prod != thc:
        raise ArithmeticError("library aligned counts disagree with the letter-count closed form")
    s1, s2 = _flanking_sums(sig, lib)
    # width-3 turn-arounds need a tile without internal vertices; library tiles have none
    w3 = 0
    for t in set(sig.tiles):
        if census(_lookup(lib, t))[FLANK_EMPTY]:
            raise ArithmeticError(f"library tile {t} has no internal vertex")
    return CountBreakdown(thc, _scaled(thc, s1), _scaled(thc, s2), w3, zhc_trace(sig, lib))


# -- random signatures -------------------------------------------------------------

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


@dataclass
class Lcg64:
    """x <- a*x + c (mod 2^64); ``below(k)`` takes the high bits of x*k."""

    state: int
    a: int = field(default=LCG_MULTIPLIER, repr=False)
    c: int = field(default=LCG_INCREMENT, repr=False)

    def next(self) -> int:
        self.state = (self.a * self.state + self.c) & _MASK64
        return self.state

    def below(self, k: int) -> int:
        return (self.next() * k) >> 64


def random_signature(n_tiles: int, seed: int, keys: Sequence[str]) -> GraphSignature:
    """Uniform draw over ``keys`` (sorted first); even counts are bumped to odd."""
    if n_tiles < 3:
        n_tiles = 3
    if n_tiles % 2 == 0:
        n_tiles += 1
    pool = [parse_token(k) for k in sorted(keys)]
    rng = Lcg64(seed & _MASK64)
    return GraphSignature(tuple(pool[rng.below(len(pool))] for _ in range(n_tiles)))
