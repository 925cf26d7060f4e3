"""Command-line interface: ``hamtile {count,oracle,validate,ctypes,parse,bench}``.

Exit codes: 0 success, 1 validation mismatch, 2 input error, 3 oracle budget
exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import random
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from . import alphabet as ab
from .census import ALL_CTYPES, census, transfer_set
from .engine import CountBreakdown, TiledGraphSpec, count_all, count_flanking_quadratic
from .graph import Orientation, Side, TileError, invert_tile
from .oracle import DEFAULT_BUDGET, TooLarge, enumerate_hamiltonian_cycles, oracle_breakdown
from .tilefile import TileFileError, load_graph, load_tiles

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class CommandResult:
    breakdown: CountBreakdown
    elapsed_ns: int
    echo: str
    tiles: int
    vertices: int


# -- input helpers ---------------------------------------------------------------


def _library(path):
    return ab.load_library(path or "default")


def _spec_from_args(args) -> tuple[TiledGraphSpec, str, ab.GraphSignature | None, object]:
    """Returns (spec, echo, signature-or-None, library-or-None)."""
    if getattr(args, "signature", None):
        lib = _library(args.library)
        sig = ab.parse_signature(args.signature, lib)
        return ab.build_spec(sig, lib), str(sig), sig, lib
    if getattr(args, "tiles", None):
        if not args.sequence:
            raise InputError("--tiles needs --sequence")
        tiles = load_tiles(args.tiles)
        missing = [n for n in args.sequence if n not in tiles]
        if missing:
            raise InputError(f"unknown tile name(s): {', '.join(missing)}")
        seq = [tiles[n] for n in args.sequence]
        for i in _indices(args.invert, len(seq)):
            seq[i] = invert_tile(seq[i], Side.BOTH)
        spec = TiledGraphSpec.ring(seq, twist=args.twist)
        digest = hashlib.sha256(
            (" ".join(args.sequence) + f"|invert={args.invert or ''}|twist={args.twist}").encode()
        ).hexdigest()[:16]
        return spec, f"tiles:{digest}", None, None
    raise InputError("give --signature or --tiles/--sequence")


def _indices(text: str | None, n: int) -> list[int]:
    if not text:
        return []
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--invert expects comma-separated indices, got {text!r}") from None
    for i in out:
        if not 0 <= i < n:
            raise InputError(f"--invert index {i} out of range 0..{n - 1}")
    return out


def _fmt(n: int, args) -> str:
    if getattr(args, "log2", False):
        return "-inf" if n == 0 else f"{math.log2(n):.6f}"
    if getattr(args, "hex", False):
        return hex(n)
    return str(n)


def _print_breakdown(b: CountBreakdown, args, out) -> None:
    print(
        f"traversing={_fmt(b.traversing, args)} flanking={_fmt(b.flanking, args)} "
        f"zigzagging={_fmt(b.zigzagging, args)} total={_fmt(b.total, args)}",
        file=out,
    )


def _print_json(res: CommandResult, out) -> None:
    b = res.breakdown
    obj = {
        "traversing": b.traversing,
        "flanking": b.flanking,
        "zigzagging": b.zigzagging,
        "total": b.total,
        "tiles": res.tiles,
        "vertices": res.vertices,
        "elapsed_ns": res.elapsed_ns,
        "input": res.echo,
    }
    # counts can have tens of thousands of digits
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    print(json.dumps(obj), file=out)


# -- commands ------------------------------------------------------------------------


def cmd_count(args, out=sys.stdout) -> int:
    spec, echo, sig, lib = _spec_from_args(args)
    t0 = time.perf_counter_ns()
    b = ab.count_cc(sig, lib) if sig is not None else count_all(spec)
    elapsed = time.perf_counter_ns() - t0
    res = CommandResult(b, elapsed, echo, len(spec), spec.num_vertices)
    if args.json:
        _print_json(res, out)
    else:
        _print_breakdown(b, args, out)
    return EXIT_OK


def cmd_oracle(args, out=sys.stdout) -> int:
    t0 = time.perf_counter_ns()
    if args.graph:
        g = load_graph(args.graph)
        cycles = enumerate_hamiltonian_cycles(g, args.max_vertices)
        if args.classify:
            raise InputError("--classify needs a tile sequence, not a raw graph")
        print(f"total={_fmt(len(cycles), args)}", file=out)
        return EXIT_OK
    spec, echo, _, _ = _spec_from_args(args)
    if args.classify:
        b = oracle_breakdown(spec, args.max_vertices)
        elapsed = time.perf_counter_ns() - t0
        if args.json:
            _print_json(CommandResult(b, elapsed, echo, len(spec), spec.num_vertices), out)
        else:
            parts = [f"{k}={_fmt(v, args)}" for k, v in b.as_dict().items() if k != "flanking"]
            print(" ".join(parts), file=out)
        return EXIT_OK
    n = len(enumerate_hamiltonian_cycles(spec.graph(), args.max_vertices))
    print(f"total={_fmt(n, args)}", file=out)
    return EXIT_OK


def _random_spec(rng: random.Random, names, tiles, max_seq: int, budget: int):
    for _ in range(1000):
        k = rng.randint(3, max(3, max_seq))
        seq = [rng.choice(names) for _ in range(k)]
        ors = [rng.choice((Orientation.STRAIGHT, Orientation.SWAPPED)) for _ in range(k)]
        spec = TiledGraphSpec(tuple(tiles[n] for n in seq), tuple(ors))
        if spec.num_vertices <= budget:
            return seq, ors, spec
    raise InputError("no tile sequence fits the oracle budget")


def cmd_validate(args, out=sys.stdout) -> int:
    rng = random.Random(args.seed)
    failures = 0
    if args.tiles:
        tiles = load_tiles(args.tiles)
        names = sorted(tiles)
        for case in range(args.cases):
            seq, ors, spec = _random_spec(rng, names, tiles, args.max_seq, args.max_vertices)
            eng, orc = count_all(spec), oracle_breakdown(spec, args.max_vertices)
            if eng != orc:
                failures += 1
                print(
                    f"MISMATCH case={case} seed={args.seed} tiles={' '.join(seq)} "
                    f"orientations={','.join(o.value for o in ors)} engine={eng.as_dict()} oracle={orc.as_dict()}",
                    file=out,
                )
                break
    else:
        lib = ab.load_library(args.library or "default", validate=False)
        for key in lib:
            for problem in ab.check_library_tile(ab.parse_token(key), lib[key]):
                failures += 1
                print(f"MISMATCH library tile {key}: {problem}", file=out)
        if not failures:
            keys = sorted(lib)
            for case in range(args.cases):
                k = rng.choice([n for n in range(3, max(3, args.max_seq) + 1, 2)])
                sig = ab.GraphSignature(tuple(ab.parse_token(rng.choice(keys)) for _ in range(k)))
                spec = ab.build_spec(sig, lib)
                fast, eng = ab.count_cc(sig, lib), count_all(spec)
                orc = oracle_breakdown(spec, args.max_vertices) if spec.num_vertices <= args.max_vertices else eng
                if not fast == eng == orc:
                    failures += 1
                    print(
                        f"MISMATCH case={case} seed={args.seed} signature={sig!s} fast={fast.as_dict()} "
                        f"engine={eng.as_dict()} oracle={orc.as_dict()}",
                        file=out,
                    )
                    break
    if failures:
        print(f"validate: FAIL ({failures} mismatch(es))", file=out)
        return EXIT_MISMATCH
    print(f"validate: PASS ({args.cases} cases)", file=out)
    return EXIT_OK


def cmd_ctypes(args, out=sys.stdout) -> int:
    if args.tiles:
        tiles = load_tiles(args.tiles)
    else:
        tiles = _library(args.library)
    if args.tile not in tiles:
        raise InputError(f"unknown tile {args.tile!r}")
    c = census(tiles[args.tile])
    for ct in ALL_CTYPES:
        print(f"{ct}={c[ct]}", file=out)
    ts = transfer_set(c)
    print("R", file=out)
    for row in ts.R:
        print(" ".join(map(str, row)), file=out)
    print("Z", file=out)
    for row in ts.Z:
        print(" ".join(map(str, row)), file=out)
    return EXIT_OK


def cmd_parse(args, out=sys.stdout) -> int:
    lib = _library(args.library) if args.library else None
    sig = ab.parse_signature(args.signature, lib)
    lc = ab.letter_counts(sig)
    print(str(sig), file=out)
    print(" ".join(f"#{x}={lc[x]}" for x in ab.LETTERS), file=out)
    print(f"tiles={len(sig)} m={sig.m} thc=2^{lc.thc_exponent}", file=out)
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--signature-random expects a comma-separated list, got {text!r}") from None


def cmd_bench(args, out=sys.stdout) -> int:
    lib = _library(args.library)
    keys = sorted(lib)
    rows = []
    for m in _parse_sizes(args.signature_random):
        sig = ab.random_signature(m, args.seed, keys)
        if args.method == "cc":
            run = lambda: ab.count_cc(sig, lib)  # noqa: E731
        elif args.method == "engine":
            spec = ab.build_spec(sig, lib)
            run = lambda: count_all(spec)  # noqa: E731
        else:
            spec = ab.build_spec(sig, lib)
            run = lambda: count_flanking_quadratic(spec)  # noqa: E731
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter_ns()
            result = run()
            times.append(time.perf_counter_ns() - t0)
        med = statistics.median(times)
        total = result.total if isinstance(result, CountBreakdown) else sum(result)
        rows.append((len(sig), med, total))
    print("tiles elapsed_ns ratio total_bits", file=out)
    prev = None
    for n, t, total in rows:
        ratio = f"{t / prev:.3f}" if prev else "-"
        print(f"{n} {int(t)} {ratio} {total.bit_length()}", file=out)
        prev = t
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------


def _add_number_flags(p) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--hex", action="store_true", help="print counts in hexadecimal")
    g.add_argument("--log2", action="store_true", help="print log2 of the counts")


def _add_input(p) -> None:
    p.add_argument("--signature", help='graph signature, e.g. "DDdL DDdL DDdL"')
    p.add_argument("--library", help="tile library file (default: bundled)")
    p.add_argument("--tiles", help="tile definition file")
    p.add_argument("--sequence", nargs="+", metavar="NAME", help="tile names in ring order")
    p.add_argument("--invert", help="comma-separated positions to wall-invert")
    p.add_argument("--twist", action="store_true", help="swap the closing seam")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hamtile", description="Count Hamiltonian cycles of 2-tiled graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count Hamiltonian cycles")
    _add_input(p)
    p.add_argument("--json", action="store_true")
    _add_number_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="brute-force count (small graphs)")
    _add_input(p)
    p.add_argument("--graph", help="raw graph file")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_number_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="differential test: engine vs oracle")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--tiles")
    src.add_argument("--library")
    p.add_argument("--max-seq", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=500)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ctypes", help="print the census and transfer matrices of one tile")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--tiles")
    src.add_argument("--library")
    p.add_argument("--tile", required=True)
    p.set_defaults(func=cmd_ctypes)

    p = sub.add_parser("parse", help="parse and echo a signature")
    p.add_argument("--signature", required=True)
    p.add_argument("--library")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("bench", help="time counting on random signatures")
    p.add_argument("--signature-random", required=True, metavar="SIZES", help="tile counts, e.g. 1e3,1e4,1e5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--library")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--method", choices=("cc", "engine", "quadratic"), default="cc")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ab.SignatureError, ab.LibraryError, TileFileError, TileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
