"""
Uniformity statistics of point sets P_n^s(f).

Cube J_k(a) membership is a digit-window test: a point lies in J_k(a) iff
the top k digits of coordinate i spell a_i. Hit counting therefore works
on integer numerators only; the count table for all m^(ks) cubes is a
bincount of the flattened top-window index.

Weyl sums form the phase <h, phi_n(x)> exactly as an integer residue
modulo m^n and make one transcendental call per point.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .discrepancy import discrepancy, grid_discrepancy_from_counts
from .errors import CapacityError, DimensionError, UsageError
from .mring import substr
from .parallel import map_reduce, partition_range
from .pointset import check_capacity, coordinate_blocks
from .types import (
    EXHAUSTIVE,
    Collection,
    CoreSets,
    EnumerationMode,
    FrequencyReport,
    GridBox,
    Point,
    RingSpec,
    SuffixCondition,
    SweepRow,
    WeylSumResult,
    volume_fraction,
)

logger = logging.getLogger(__name__)

WEYL_ROUNDING = 2.0 ** -50


# =============================================================================
# Cubes
# =============================================================================

def box_contains(box: GridBox, p: Point) -> bool:
    """True iff substr(coord_i, n, n-k) = a_i for every coordinate."""
    n = p.spec.n
    if box.k > n:
        raise UsageError(f"box resolution k = {box.k} exceeds n = {n}")
    if len(box.a) != p.s:
        raise DimensionError(f"box of dimension {len(box.a)} against a point of dimension {p.s}")
    return all(substr(coord, n, n - box.k) == a for coord, a in zip(p.coords, box.a))


def _cell_index(coords, shift: int, side: int) -> np.ndarray:
    idx = np.zeros(len(coords[0]), dtype=np.int64)
    for col in coords:
        idx = idx * side + (col // shift).astype(np.int64)
    return idx


def _count_cells(task) -> np.ndarray:
    spec, c, k, cond, mode, start, stop = task
    side = spec.m ** k
    shift = spec.m ** (spec.n - k)
    counts = np.zeros(side ** c.s, dtype=np.int64)
    for _, coords in coordinate_blocks(spec, c, cond, mode, start, stop):
        counts += np.bincount(_cell_index(coords, shift, side), minlength=side ** c.s)
    return counts


def _count_box(task) -> int:
    spec, c, box, cond, mode, start, stop = task
    shift = spec.m ** (spec.n - box.k)
    hits = 0
    for xs, coords in coordinate_blocks(spec, c, cond, mode, start, stop):
        mask = np.ones(len(xs), dtype=bool)
        for col, a in zip(coords, box.a):
            mask &= (col // shift) == a
        hits += int(np.count_nonzero(mask))
    return hits


def _tasks(spec, c, extra, cond, mode, total, threads):
    return [(spec, c, extra, cond, mode, lo, hi) for lo, hi in partition_range(0, total, threads)]


def cube_counts(
    spec: RingSpec,
    c: Collection,
    k: int,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> Tuple[np.ndarray, int]:
    """
    Hit counts of every cube J_k(a), a in [m^k]^s, in one pass.

    Returns:
        (counts, total): counts is flat with cube a at index
        sum a_i m^(k(s-1-i)); total is the number of enumerated points.
    """
    if not 1 <= k <= spec.n:
        raise UsageError(f"box resolution k = {k} outside [1, n = {spec.n}]")
    cells = spec.m ** (k * c.s)
    if cells > 1 << limits.grid_cells_max_log2:
        raise CapacityError(f"{cells} cubes exceed 2^{limits.grid_cells_max_log2} table cells")
    total = check_capacity(spec, cond, mode, limits)
    logger.info("counting %d cubes over %d points with %d worker(s)", cells, total, threads)
    counts = map_reduce(
        _count_cells, _tasks(spec, c, k, cond, mode, total, threads), threads,
        combine=np.add,
    )
    return counts, total


def cube_frequency(
    spec: RingSpec,
    c: Collection,
    box: GridBox,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> FrequencyReport:
    """
    Share of enumerated points inside J_k(a).

    Exhaustive mode gives the exact conditional probability
    P(phi_n in J_k(a) | xi_d = beta) at this n.
    """
    if box.k > spec.n:
        raise UsageError(f"box resolution k = {box.k} exceeds n = {spec.n}")
    box.validate(spec.m, c.s)
    total = check_capacity(spec, cond, mode, limits)
    hits = map_reduce(
        _count_box, _tasks(spec, c, box, cond, mode, total, threads), threads,
        combine=lambda a, b: a + b,
    )
    return FrequencyReport(box, hits, total, box.volume(spec.m))


def all_cube_frequencies(
    spec: RingSpec,
    c: Collection,
    k: int,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> List[FrequencyReport]:
    """Frequencies of all m^(ks) cubes, a in lexicographic order."""
    counts, total = cube_counts(spec, c, k, cond, mode, limits, threads)
    target = volume_fraction(spec.m, k, c.s)
    side = spec.m ** k
    return [
        FrequencyReport(GridBox(k, a), int(counts[i]), total, target)
        for i, a in enumerate(itertools.product(range(side), repeat=c.s))
    ]


def max_deviation(counts: np.ndarray, total: int, m: int, k: int, s: int) -> Fraction:
    """max over cubes of |hits/total - m^-ks|, exactly."""
    scale = m ** (k * s)
    if total * scale < 1 << 62:
        worst = int(np.max(np.abs(counts.astype(np.int64) * scale - total)))
    else:
        worst = max(abs(int(h) * scale - total) for h in counts)
    return Fraction(worst, total * scale)


# =============================================================================
# Neighborhoods and cores
# =============================================================================

def neighborhood(b: Sequence[int], K: int, m: int) -> FrozenSet[Tuple[int, ...]]:
    """O_K(b): every c with (b_i - c_i) mod m^K in {0, 1, m^K - 1}."""
    side = m ** K
    if any(not 0 <= bi < side for bi in b):
        raise UsageError(f"{tuple(b)} is not in [{side}]^{len(b)}")
    options = [sorted({bi, (bi + 1) % side, (bi - 1) % side}) for bi in b]
    return frozenset(itertools.product(*options))


def inner_core(k: int, K: int, a: Sequence[int], m: int, s: Optional[int] = None) -> CoreSets:
    """
    The core M(K) of J_k(a): sub-cubes J_K(b) whose whole neighborhood stays in J_k(a).

    b qualifies iff its top k digits spell a and its low K-k digits are
    neither all zero nor all (m-1).
    """
    if not K > k >= 1:
        raise UsageError(f"inner core needs K > k >= 1, got k={k}, K={K}")
    s = len(a) if s is None else s
    if len(a) != s:
        raise DimensionError(f"corner of dimension {len(a)} against s = {s}")
    if any(not 0 <= ai < m ** k for ai in a):
        raise UsageError(f"corner {tuple(a)} outside [{m ** k}]^{s}")
    inner = m ** (K - k)
    per_axis = [[ai * inner + r for r in range(1, inner - 1)] for ai in a]
    members = frozenset(itertools.product(*per_axis))
    return CoreSets(members=members, count=len(members), outer_count=inner ** s)


# =============================================================================
# Weyl sums
# =============================================================================

def _phases(coords, hs, modulus: int):
    acc = None
    for col, h in zip(coords, hs):
        term = (col * (h % modulus)) % modulus
        acc = term if acc is None else (acc + term) % modulus
    return acc


def _weyl_partials(task) -> List[Tuple[float, float]]:
    spec, c, hs_list, cond, mode, start, stop = task
    modulus = spec.modulus
    re = [[] for _ in hs_list]
    im = [[] for _ in hs_list]
    for _, coords in coordinate_blocks(spec, c, cond, mode, start, stop):
        for j, hs in enumerate(hs_list):
            phase = _phases(coords, hs, modulus)
            angle = 2.0 * math.pi * np.asarray(phase / modulus, dtype=np.float64)
            re[j].append(math.fsum(np.cos(angle)))
            im[j].append(math.fsum(np.sin(angle)))
    return [(math.fsum(r), math.fsum(i)) for r, i in zip(re, im)]


def _weyl_many(spec, c, hs_list, cond, mode, limits, threads) -> List[WeylSumResult]:
    total = check_capacity(spec, cond, mode, limits)
    if total == 0:
        raise UsageError("Weyl sum over an empty enumeration")
    parts = map_reduce(_weyl_partials, _tasks(spec, c, hs_list, cond, mode, total, threads), threads)
    budget = total * WEYL_ROUNDING
    if budget > 1e-9:
        logger.warning("Weyl rounding budget %.3g exceeds 1e-9", budget)
    results = []
    for j, hs in enumerate(hs_list):
        re = math.fsum(p[j][0] for p in parts)
        im = math.fsum(p[j][1] for p in parts)
        results.append(WeylSumResult(tuple(hs), complex(re / total, im / total), total, budget))
    return results


def weyl_sum(
    spec: RingSpec,
    c: Collection,
    h: Sequence[int],
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> WeylSumResult:
    """
    (1/N) sum over enumerated x of exp(2 pi i <h, phi_n(x)>).

    The phase is reduced exactly to an integer in [m^n] before the call
    to cos/sin; partial sums use math.fsum, so the rounding error stays
    within N * 2^-50.
    """
    if len(h) != c.s:
        raise DimensionError(f"frequency vector of length {len(h)} against s = {c.s}")
    return _weyl_many(spec, c, [tuple(h)], cond, mode, limits, threads)[0]


def weyl_spectrum(
    spec: RingSpec,
    c: Collection,
    h_max: int,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> List[WeylSumResult]:
    """Weyl sums for every nonzero h in [-h_max, h_max]^s, in one enumeration."""
    if h_max < 1:
        raise UsageError(f"h_max must be >= 1, got {h_max}")
    hs_list = [
        h for h in itertools.product(range(-h_max, h_max + 1), repeat=c.s)
        if any(h)
    ]
    return _weyl_many(spec, c, hs_list, cond, mode, limits, threads)


# =============================================================================
# Convergence
# =============================================================================

def convergence_sweep(
    m: int,
    n_lo: int,
    n_hi: int,
    c: Collection,
    k: int,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> List[SweepRow]:
    """
    One row per n in [n_lo, n_hi]: max cube deviation and grid(k) discrepancy.
    """
    d = cond.d if cond is not None else 0
    if n_lo > n_hi:
        raise UsageError(f"empty range {n_lo}:{n_hi}")
    if n_lo < k + d:
        raise UsageError(f"n_lo = {n_lo} below k + d = {k + d}")
    rows = []
    for n in range(n_lo, n_hi + 1):
        spec = RingSpec(m, n)
        counts, total = cube_counts(spec, c, k, cond, mode, limits, threads)
        dev = max_deviation(counts, total, m, k, c.s)
        disc = grid_discrepancy_from_counts(counts, m, k, c.s, total, limits)
        logger.info("n=%d max_dev=%s disc=%s", n, dev, disc.value)
        rows.append(SweepRow(n=n, max_deviation=dev, discrepancy=disc.value, total=total))
    return rows


__all__ = [
    "box_contains", "cube_counts", "cube_frequency", "all_cube_frequencies",
    "max_deviation", "neighborhood", "inner_core", "weyl_sum", "weyl_spectrum",
    "convergence_sweep", "discrepancy",
]
