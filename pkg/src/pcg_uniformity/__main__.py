"""
CLI entry point for pcg-uniformity.

Usage:
    python -m pcg_uniformity <command> [options]

Commands:
    gen        generator stream x0, f(x0), f(f(x0)), ...
    points     the point set P_n^s(f)
    cubefreq   cube hit frequencies (one box or --all)
    weyl       normalized Weyl sums (one h or every h up to --h-max)
    disc       discrepancy, grid(k) or exact
    sweep      max cube deviation and grid discrepancy over a range of n
    witness    hitting-set construction for (y, ..., y^s), with verification
    horizon    share of x admitting a window index, per horizon N
    transform  the collection A f + z

Exit codes: 0 success, 2 parse error, 3 capacity refusal,
4 precondition or dimension error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .analysis import (
    all_cube_frequencies,
    convergence_sweep,
    cube_counts,
    cube_frequency,
    weyl_spectrum,
    weyl_sum,
)
from .config import DEFAULT_LIMITS, Limits
from .discrepancy import check_exact_caps, discrepancy, grid_discrepancy_from_counts
from .errors import CapacityError, ParseError, PCGUniformityError
from .functions import (
    parse_collection,
    parse_int_vector,
    parse_matrix,
    parse_polynomial,
    transform_affine,
)
from .pointset import coordinate_matrix, enumerate_with_x, pcg_stream, point_count
from .report_io import (
    make_document,
    point_table,
    report_table,
    write_csv,
    write_json,
)
from .types import (
    EXHAUSTIVE,
    DiscrepancyMode,
    EnumerationMode,
    GridBox,
    Residue,
    RingSpec,
    SuffixCondition,
    WitnessParams,
)
from .witness import horizon_scan, run_witness

logger = logging.getLogger(__name__)

EXIT_PARSE = 2
EXIT_CAPACITY = 3
EXIT_USAGE = 4


# =============================================================================
# Flag parsing
# =============================================================================

def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad {what} {text!r}") from None


def parse_suffix(text: Optional[str]) -> Optional[SuffixCondition]:
    """"d:beta" -> SuffixCondition(d, beta)."""
    if text is None:
        return None
    d, sep, beta = text.partition(":")
    if not sep:
        raise ParseError(f"suffix must be d:beta, got {text!r}")
    return SuffixCondition(_int(d, "suffix length"), _int(beta, "suffix value"))


def parse_mode(text: str) -> EnumerationMode:
    """"exhaustive" or "sample:count:seed"."""
    if text == "exhaustive":
        return EXHAUSTIVE
    parts = text.split(":")
    if len(parts) == 3 and parts[0] == "sample":
        return EnumerationMode.sampled(_int(parts[1], "sample count"), _int(parts[2], "seed"))
    raise ParseError(f"mode must be exhaustive or sample:count:seed, got {text!r}")


def parse_range(text: str) -> tuple:
    """"lo:hi", inclusive on both ends."""
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ParseError(f"range must be lo:hi, got {text!r}")
    return _int(lo, "range start"), _int(hi, "range end")


def parse_disc_mode(text: str) -> DiscrepancyMode:
    """"exact" or "grid:k"."""
    if text == "exact":
        return DiscrepancyMode.exact()
    kind, sep, k = text.partition(":")
    if kind == "grid" and sep:
        return DiscrepancyMode.grid(_int(k, "grid resolution"))
    raise ParseError(f"discrepancy mode must be exact or grid:k, got {text!r}")


# =============================================================================
# Parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcg-uniformity",
        description="Uniformity analysis of polynomial congruential generators mod m^n",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output on stderr")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json",
                        help="Output encoding (default: json)")
    common.add_argument("--output", "-o", help="Output path (default: stdout)")
    common.add_argument("--threads", type=int, default=1,
                        help="Worker processes (default: 1)")
    common.add_argument("--max-enum-log2", type=int,
                        help="Refuse exhaustive domains above 2^this (default: 30)")
    common.add_argument("--warn-enum-log2", type=int,
                        help="Warn for exhaustive domains above 2^this (default: 26)")

    ring = argparse.ArgumentParser(add_help=False)
    ring.add_argument("--m", type=int, required=True, help="Base m >= 2")

    enum = argparse.ArgumentParser(add_help=False)
    enum.add_argument("--n", type=int, required=True, help="Digit count n >= 1")
    enum.add_argument("--collection", required=True,
                      help='monomials:s, iterations:<poly>:s, derivative:s or "p1;p2;..."')
    enum.add_argument("--suffix", help="Condition x mod m^d = beta, as d:beta")
    enum.add_argument("--mode", default="exhaustive",
                      help="exhaustive or sample:count:seed (default: exhaustive)")

    gen = subparsers.add_parser("gen", parents=[common, ring], help="Generator stream")
    gen.add_argument("--n", type=int, required=True, help="Digit count n >= 1")
    gen.add_argument("--poly", required=True, help="Generator polynomial, e.g. 1,1,1")
    gen.add_argument("--x0", type=int, default=0, help="Seed state in [m^n] (default: 0)")
    gen.add_argument("--count", type=int, required=True, help="Number of values")

    subparsers.add_parser("points", parents=[common, ring, enum], help="Point set P_n^s(f)")

    cube = subparsers.add_parser("cubefreq", parents=[common, ring, enum], help="Cube hit frequencies")
    cube.add_argument("--k", type=int, required=True, help="Cube resolution k")
    which = cube.add_mutually_exclusive_group(required=True)
    which.add_argument("--a", help="Cube corner a, e.g. 0,1")
    which.add_argument("--all", action="store_true", help="All m^(ks) cubes")

    weyl = subparsers.add_parser("weyl", parents=[common, ring, enum], help="Weyl sums")
    freq = weyl.add_mutually_exclusive_group(required=True)
    freq.add_argument("--h", help="Frequency vector, e.g. 1,0")
    freq.add_argument("--h-max", type=int, help="Every nonzero h in [-H, H]^s")

    disc = subparsers.add_parser("disc", parents=[common, ring, enum], help="Discrepancy")
    disc.add_argument("--disc-mode", default="exact", help="exact or grid:k (default: exact)")

    sweep = subparsers.add_parser("sweep", parents=[common, ring], help="Convergence sweep over n")
    sweep.add_argument("--n", required=True, help="Range lo:hi, inclusive")
    sweep.add_argument("--collection", required=True, help="Collection text")
    sweep.add_argument("--k", type=int, required=True, help="Cube resolution k")
    sweep.add_argument("--suffix", help="Condition x mod m^d = beta, as d:beta")
    sweep.add_argument("--mode", default="exhaustive", help="exhaustive or sample:count:seed")

    wit = subparsers.add_parser("witness", parents=[common, ring], help="Hitting-set construction")
    wit.add_argument("--s", type=int, required=True, help="Number of powers s")
    wit.add_argument("--K", type=int, required=True, help="Target cube resolution K")
    wit.add_argument("--N", type=int, required=True, help="Window search horizon N >= sK")
    wit.add_argument("--n", type=int, required=True, help="Ring digits n >= 2N")
    wit.add_argument("--suffix", help="Condition z mod m^d = beta, as d:beta")
    wit.add_argument("--samples", type=int, help="Check only the first this many admissible z")
    wit.add_argument("--transcript", type=int, default=5, help="Transcript records (default: 5)")

    hor = subparsers.add_parser("horizon", parents=[common, ring], help="Window index coverage per N")
    hor.add_argument("--s", type=int, required=True, help="Number of powers s")
    hor.add_argument("--K", type=int, required=True, help="Target cube resolution K")
    hor.add_argument("--N", required=True, help="Horizon range lo:hi, inclusive")
    hor.add_argument("--suffix", help="Condition x mod m^d = beta, as d:beta")

    tr = subparsers.add_parser("transform", parents=[common], help="Affine transform of a collection")
    tr.add_argument("--collection", required=True, help="Collection text")
    tr.add_argument("--matrix", required=True, help='Square integer matrix, rows split by ";"')
    tr.add_argument("--shift", help="Free vector z (default: zero)")

    return parser


# =============================================================================
# Commands
# =============================================================================

def _limits(args) -> Limits:
    return DEFAULT_LIMITS.with_enumeration_bounds(args.warn_enum_log2, args.max_enum_log2)


def _emit(args, doc, table) -> None:
    target = args.output if args.output else sys.stdout
    if args.format == "json":
        write_json(target, doc)
    else:
        header, rows = table
        write_csv(target, header, rows)


def _emit_reports(args, spec_header, payload, **meta) -> None:
    doc = make_document(args.command, spec_header, payload, **meta)
    reports = payload if isinstance(payload, list) else [payload]
    _emit(args, doc, report_table(reports))


def cmd_gen(args) -> None:
    spec = RingSpec(args.m, args.n)
    f = parse_polynomial(args.poly)
    stream = pcg_stream(f, Residue.from_int(args.x0 % spec.modulus, spec), args.count)
    _emit_reports(args, spec.header(), stream, poly=args.poly)


def cmd_points(args) -> None:
    spec = RingSpec(args.m, args.n)
    c = parse_collection(args.collection)
    pairs = enumerate_with_x(spec, c, parse_suffix(args.suffix), parse_mode(args.mode), _limits(args))
    header, rows = point_table(spec.m, spec.n, pairs, c.s)
    if args.format == "csv":
        _emit(args, None, (header, rows))
        return
    doc = {
        "command": "points",
        "spec": spec.header(),
        "collection": args.collection,
        "points": [dict(zip(header, row)) for row in rows],
    }
    _emit(args, doc, None)


def cmd_cubefreq(args) -> None:
    spec = RingSpec(args.m, args.n)
    c = parse_collection(args.collection)
    cond = parse_suffix(args.suffix)
    mode = parse_mode(args.mode)
    if args.all:
        payload = all_cube_frequencies(spec, c, args.k, cond, mode, _limits(args), args.threads)
    else:
        box = GridBox(args.k, parse_int_vector(args.a))
        payload = cube_frequency(spec, c, box, cond, mode, _limits(args), args.threads)
    _emit_reports(args, spec.header(), payload, collection=args.collection)


def cmd_weyl(args) -> None:
    spec = RingSpec(args.m, args.n)
    c = parse_collection(args.collection)
    cond = parse_suffix(args.suffix)
    mode = parse_mode(args.mode)
    if args.h_max is not None:
        payload = weyl_spectrum(spec, c, args.h_max, cond, mode, _limits(args), args.threads)
    else:
        payload = weyl_sum(spec, c, parse_int_vector(args.h), cond, mode, _limits(args), args.threads)
    _emit_reports(args, spec.header(), payload, collection=args.collection)


def cmd_disc(args) -> None:
    spec = RingSpec(args.m, args.n)
    c = parse_collection(args.collection)
    limits = _limits(args)
    disc_mode = parse_disc_mode(args.disc_mode)
    cond = parse_suffix(args.suffix)
    mode = parse_mode(args.mode)
    if disc_mode.kind == "grid":
        counts, total = cube_counts(spec, c, disc_mode.k, cond, mode, limits, args.threads)
        report = grid_discrepancy_from_counts(counts, spec.m, disc_mode.k, c.s, total, limits)
    else:
        check_exact_caps(c.s, point_count(spec, cond, mode), limits)
        points = coordinate_matrix(spec, c, cond, mode, limits)
        report = discrepancy(points, disc_mode, spec=spec, limits=limits)
    _emit_reports(args, spec.header(), report, collection=args.collection)


def cmd_sweep(args) -> None:
    n_lo, n_hi = parse_range(args.n)
    c = parse_collection(args.collection)
    rows = convergence_sweep(
        args.m, n_lo, n_hi, c, args.k, parse_suffix(args.suffix), parse_mode(args.mode),
        _limits(args), args.threads,
    )
    _emit_reports(args, None, rows, m=args.m, collection=args.collection, k=args.k)


def cmd_witness(args) -> None:
    params = WitnessParams(m=args.m, s=args.s, K=args.K, N=args.N, n=args.n)
    report = run_witness(
        params, parse_suffix(args.suffix), samples=args.samples,
        transcript_size=args.transcript, limits=_limits(args),
    )
    _emit_reports(args, params.spec.header(), report)


def cmd_horizon(args) -> None:
    N_lo, N_hi = parse_range(args.N)
    rows = horizon_scan(args.m, args.s, args.K, N_lo, N_hi, parse_suffix(args.suffix))
    _emit_reports(args, None, rows, m=args.m, s=args.s, K=args.K)


def cmd_transform(args) -> None:
    c = parse_collection(args.collection)
    A = parse_matrix(args.matrix)
    z = parse_int_vector(args.shift) if args.shift else (0,) * A.size
    _emit_reports(args, None, transform_affine(A, z, c))


COMMANDS = {
    "gen": cmd_gen,
    "points": cmd_points,
    "cubefreq": cmd_cubefreq,
    "weyl": cmd_weyl,
    "disc": cmd_disc,
    "sweep": cmd_sweep,
    "witness": cmd_witness,
    "horizon": cmd_horizon,
    "transform": cmd_transform,
}


def exit_code(exc: PCGUniformityError) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, CapacityError):
        return EXIT_CAPACITY
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 1

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except PCGUniformityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code(exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
