"""
Discrepancy of finite point sets over half-open axis-aligned boxes.

Both modes reduce the point set to a count table over lattice cells and
scan boxes whose corners are cell boundaries:

- grid(k): boundaries are all multiples of m^-k; a point's cell is
  the top k digits of each coordinate.
- exact: the point set lives on the lattice m^-r, r the least exponent
  that makes every coordinate a multiple of m^-r. Boundaries are 0, 1,
  every coordinate value u and its lattice successor u + m^-r. Between two
  neighbouring boundaries the count is constant and the volume linear, so
  the supremum over all lattice boxes is attained on these boundaries.

Deviations are compared as integers |count * D^s - N * prod(widths)|, with
widths in lattice units of 1/D. For a fixed choice of the leading s-1
sides, the deviation over the last axis is a difference g(hi) - g(lo) of
one sequence g, so its maximum is max(g) - min(g); only the leading sides
are enumerated.
"""

import itertools
import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import CapacityError, DimensionError, UsageError
from .types import DiscrepancyMode, DiscrepancyReport, Point, RingSpec

logger = logging.getLogger(__name__)

PointsLike = Union[Sequence[Point], np.ndarray]


def _as_matrix(points: PointsLike, spec: Optional[RingSpec]) -> Tuple[np.ndarray, RingSpec]:
    if isinstance(points, np.ndarray):
        if spec is None:
            raise UsageError("a numerator array needs its ring spec")
        if points.ndim != 2:
            raise DimensionError(f"expected an (N, s) array, got shape {points.shape}")
        return points, spec
    points = list(points)
    if not points:
        raise UsageError("discrepancy of an empty point set")
    first = points[0]
    if spec is not None and spec != first.spec:
        raise UsageError(f"points live in {first.spec}, not {spec}")
    s = first.s
    if any(p.s != s or p.spec != first.spec for p in points):
        raise DimensionError("points must share dimension and ring")
    dtype = np.int64 if first.spec.modulus <= 1 << 62 else object
    return np.array([p.numerators() for p in points], dtype=dtype), first.spec


def _scan_work(lengths: Sequence[int]) -> int:
    # Table entries touched: every leading box times the last axis.
    work = lengths[-1] + 1
    for L in lengths[:-1]:
        work *= L * (L + 1) // 2
    return work


def _prefix_table(counts: np.ndarray, dtype) -> np.ndarray:
    prefix = np.zeros(tuple(L + 1 for L in counts.shape), dtype=dtype)
    prefix[tuple(slice(1, None) for _ in counts.shape)] = counts.astype(dtype)
    for axis in range(counts.ndim):
        prefix = np.cumsum(prefix, axis=axis, dtype=dtype)
    return prefix


def _best_last_axis(slabs, widths, cand, scale, total):
    """
    Best box among rows of ``slabs`` (prefix counts along the last axis).

    Returns (row, lo, hi, deviation) for the first row attaining the maximum.
    """
    g = slabs * scale - total * widths[:, None] * cand[None, :]
    top = g.argmax(axis=1)
    bottom = g.argmin(axis=1)
    rows = np.arange(g.shape[0])
    dev = g[rows, top] - g[rows, bottom]
    r = int(np.argmax(dev))
    lo, hi = sorted((int(top[r]), int(bottom[r])))
    if lo == hi:
        lo, hi = 0, len(cand) - 1
    return r, lo, hi, int(dev[r])


def scan_boxes(
    counts: np.ndarray,
    cands: Sequence[np.ndarray],
    D: int,
    total: int,
) -> Tuple[Fraction, Tuple[int, ...], Tuple[int, ...]]:
    """
    Maximal deviation over boxes with corners on cell boundaries.

    Args:
        counts: s-dimensional table of points per cell
        cands: per axis, the L_i + 1 boundaries in lattice units, from 0 to D
        D: lattice denominator
        total: number of points N

    Returns:
        (deviation, lower, upper) with corners as boundary values in
        lattice units. Leading sides are scanned in lexicographic order and
        the first maximum wins.
    """
    s = counts.ndim
    scale = D ** s
    dtype = np.int64 if total * scale < 1 << 61 else object
    prefix = _prefix_table(counts, dtype)
    cands = [np.asarray(c).astype(dtype) for c in cands]
    last = cands[-1]

    if s == 1:
        _, lo, hi, dev = _best_last_axis(prefix[None, :], np.ones(1, dtype=dtype), last, scale, total)
        return Fraction(dev, total * scale), (int(last[lo]),), (int(last[hi]),)

    best_dev = -1
    best_lo: Tuple[int, ...] = ()
    best_hi: Tuple[int, ...] = ()
    outer = [
        [(lo, hi) for lo in range(len(c) - 1) for hi in range(lo + 1, len(c))]
        for c in cands[:-2]
    ]
    second = cands[-2]
    for lead in itertools.product(*outer):
        table = prefix
        width = 1
        for (lo, hi), cand in zip(lead, cands):
            table = table[hi] - table[lo]
            width *= int(cand[hi] - cand[lo])
        for lo in range(len(second) - 1):
            slabs = table[lo + 1:] - table[lo]
            widths = (second[lo + 1:] - second[lo]) * width
            r, a, b, dev = _best_last_axis(slabs, widths, last, scale, total)
            if dev > best_dev:
                best_dev = dev
                best_lo = tuple(int(c[p[0]]) for p, c in zip(lead, cands)) + (int(second[lo]), int(last[a]))
                best_hi = tuple(int(c[p[1]]) for p, c in zip(lead, cands)) + (
                    int(second[lo + 1 + r]), int(last[b]))
    return Fraction(best_dev, total * scale), best_lo, best_hi


def _report(mode, dev, lower, upper, D, total) -> DiscrepancyReport:
    return DiscrepancyReport(
        mode=mode,
        value=dev,
        lower=tuple(Fraction(v, D) for v in lower),
        upper=tuple(Fraction(v, D) for v in upper),
        points=total,
    )


def _check_work(lengths, limits: Limits) -> None:
    work = _scan_work(lengths)
    if work > 1 << limits.disc_work_max_log2:
        raise CapacityError(
            f"box scan over cells {tuple(lengths)} touches {work} entries, "
            f"above 2^{limits.disc_work_max_log2}"
        )


def grid_discrepancy_from_counts(
    counts: np.ndarray,
    m: int,
    k: int,
    s: int,
    total: int,
    limits: Limits = DEFAULT_LIMITS,
) -> DiscrepancyReport:
    """
    grid(k) discrepancy from a flat cube-count table.

    ``counts`` has m^(ks) entries, cell a stored at sum a_i m^(k(s-1-i)),
    the layout produced by ``analysis.cube_counts``.
    """
    side = m ** k
    if counts.size != side ** s:
        raise DimensionError(f"count table of size {counts.size} is not {side}^{s}")
    if total < 1:
        raise UsageError("discrepancy of an empty point set")
    _check_work([side] * s, limits)
    cand = np.arange(side + 1)
    dev, lower, upper = scan_boxes(counts.reshape((side,) * s), [cand] * s, side, total)
    return _report(DiscrepancyMode.grid(k), dev, lower, upper, side, total)


def check_exact_caps(s: int, total: int, limits: Limits = DEFAULT_LIMITS) -> None:
    """Refuse exact mode above the dimension or point caps."""
    if s > limits.exact_max_dim:
        raise CapacityError(f"exact discrepancy supports s <= {limits.exact_max_dim}, got {s}")
    if total > limits.exact_max_points:
        raise CapacityError(f"exact discrepancy supports N <= {limits.exact_max_points}, got {total}")


def native_resolution(numerators: np.ndarray, spec: RingSpec) -> int:
    """Least r >= 1 such that every numerator is a multiple of m^(n-r)."""
    m, n = spec.m, spec.n
    for r in range(1, n):
        step = m ** (n - r)
        if not np.any(numerators % step):
            return r
    return n


def discrepancy(
    points: PointsLike,
    mode: DiscrepancyMode,
    spec: Optional[RingSpec] = None,
    limits: Limits = DEFAULT_LIMITS,
) -> DiscrepancyReport:
    """
    sup over half-open boxes J of | |P cap J| / |P| - V(J) |.

    Exact mode takes the sup over boxes with corners on the point set's own
    lattice m^-r, r = native_resolution. It equals grid(r) and no other
    grid(k): for k > r the finer boxes see more deviation. {0, 1/2} at
    n = 2 has r = 1, exact 0 and grid(2) 1/4.

    Args:
        points: Points, or an (N, s) array of numerators (then pass spec)
        mode: grid(k) or exact
        spec: ring of the numerators
        limits: capacity limits

    Raises:
        UsageError: grid(k) with k > n, empty point set
        CapacityError: exact mode above the point/dimension caps, or a
            box scan above disc_work_max_log2
    """
    mat, spec = _as_matrix(points, spec)
    total, s = mat.shape
    if total < 1:
        raise UsageError("discrepancy of an empty point set")
    m, n = spec.m, spec.n

    if mode.kind == "grid":
        k = mode.k
        if k > n:
            raise UsageError(f"grid resolution k = {k} exceeds n = {n}")
        side = m ** k
        if side ** s > 1 << limits.grid_cells_max_log2:
            raise CapacityError(f"grid table of {side}^{s} cells above 2^{limits.grid_cells_max_log2}")
        _check_work([side] * s, limits)
        cells = (mat // m ** (n - k)).astype(np.int64)
        counts = np.bincount(
            np.ravel_multi_index(tuple(cells.T), (side,) * s), minlength=side ** s
        ).reshape((side,) * s)
        cand = np.arange(side + 1)
        dev, lower, upper = scan_boxes(counts, [cand] * s, side, total)
        return _report(mode, dev, lower, upper, side, total)

    check_exact_caps(s, total, limits)
    r = native_resolution(mat, spec)
    D = m ** r
    lattice = [[int(v) // m ** (n - r) for v in mat[:, i]] for i in range(s)]
    cands = [np.array(sorted({0, D} | set(u) | {v + 1 for v in u})) for u in lattice]
    _check_work([len(c) - 1 for c in cands], limits)
    logger.debug("exact discrepancy on lattice %d^-%d with %s boundaries", m, r, [len(c) for c in cands])
    cells = [np.searchsorted(c, np.array(u, dtype=np.int64), side="right") - 1 for c, u in zip(cands, lattice)]
    shape = tuple(len(c) - 1 for c in cands)
    counts = np.bincount(
        np.ravel_multi_index(tuple(cells), shape), minlength=int(np.prod(shape))
    ).reshape(shape)
    dev, lower, upper = scan_boxes(counts, cands, D, total)
    return _report(mode, dev, lower, upper, D, total)
