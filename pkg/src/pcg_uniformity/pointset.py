"""
Point sets P_n^s(f): enumeration of [m^n] and the map phi_n.

The domain of an enumeration is {x in [m^n] : x mod m^d = beta}, i.e.
x = beta + t * m^d for t in [m^(n-d)]. Exhaustive mode walks t in
ascending order. Sampled mode draws t_i uniformly using SplitMix64 with a
separate sub-stream per draw index i, so any contiguous range of draws can
be produced independently of the others.
"""

import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import CapacityError, UsageError
from .functions import (
    NUMPY_SAFE_MODULUS,
    evaluate_collection,
    evaluate_collection_array,
    iterate_int,
)
from .types import (
    EXHAUSTIVE,
    Collection,
    EnumerationMode,
    IntPolynomial,
    Point,
    Residue,
    RingSpec,
    SuffixCondition,
    UnitPoint,
)

logger = logging.getLogger(__name__)

BLOCK_SIZE = 1 << 16

MASK64 = (1 << 64) - 1


class SplitMix64:
    """
    Counter-based SplitMix64.

    ``word(c)`` is the c-th output of the SplitMix64 sequence started at
    ``seed``: the state after c+1 golden-ratio increments, pushed through
    the standard finalizer. No hidden state, so draws can be produced out
    of order and in parallel.
    """

    GOLDEN = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    # Counters reserved for one draw index; rejection never gets close.
    DRAW_STRIDE = 1 << 20

    def __init__(self, seed: int):
        self.seed = seed & MASK64

    @classmethod
    def mix(cls, z: int) -> int:
        z = ((z ^ (z >> 30)) * cls.MIX1) & MASK64
        z = ((z ^ (z >> 27)) * cls.MIX2) & MASK64
        return z ^ (z >> 31)

    def word(self, counter: int) -> int:
        return self.mix((self.seed + (counter + 1) * self.GOLDEN) & MASK64)

    def below(self, index: int, bound: int) -> int:
        """
        Uniform integer in [0, bound) for draw number ``index``.

        Bounds above 2^64 concatenate several words; values at or above
        the bound are rejected and redrawn from the same sub-stream.
        """
        if bound < 1:
            raise UsageError(f"sampling bound must be >= 1, got {bound}")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        words = (bits + 63) // 64
        mask = (1 << bits) - 1
        counter = index * self.DRAW_STRIDE
        while True:
            v = 0
            for _ in range(words):
                v = (v << 64) | self.word(counter)
                counter += 1
            v &= mask
            if v < bound:
                return v


def domain_size(spec: RingSpec, cond: Optional[SuffixCondition] = None) -> int:
    """m^(n-d), the size of the (conditioned) domain."""
    if cond is None:
        return spec.modulus
    cond.validate(spec)
    return spec.m ** (spec.n - cond.d)


def point_count(spec: RingSpec, cond: Optional[SuffixCondition], mode: EnumerationMode) -> int:
    """Number of points an enumeration produces."""
    return domain_size(spec, cond) if mode.is_exhaustive else mode.count


def check_capacity(
    spec: RingSpec,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
) -> int:
    """
    Validate the enumeration against the limits and return the point count.

    Raises:
        CapacityError: exhaustive domain above 2^exhaustive_max_log2
    """
    size = domain_size(spec, cond)
    if not mode.is_exhaustive:
        return mode.count
    if size > 1 << limits.exhaustive_max_log2:
        raise CapacityError(
            f"exhaustive enumeration of {size} residues exceeds "
            f"2^{limits.exhaustive_max_log2}; use a sampled mode or a suffix condition"
        )
    if size > 1 << limits.exhaustive_warn_log2:
        logger.warning(
            "exhaustive enumeration of %d residues is above 2^%d and may be slow",
            size, limits.exhaustive_warn_log2,
        )
    return size


def _domain_value(spec: RingSpec, cond: Optional[SuffixCondition], t: int) -> int:
    if cond is None:
        return t
    return cond.beta + t * spec.m ** cond.d


def domain_values(
    spec: RingSpec,
    cond: Optional[SuffixCondition],
    mode: EnumerationMode,
    start: int,
    stop: int,
) -> List[int]:
    """The enumeration's x values with positions start .. stop-1."""
    if mode.is_exhaustive:
        return [_domain_value(spec, cond, t) for t in range(start, stop)]
    size = domain_size(spec, cond)
    sampler = SplitMix64(mode.seed)
    return [_domain_value(spec, cond, sampler.below(i, size)) for i in range(start, stop)]


def _domain_array(
    spec: RingSpec,
    cond: Optional[SuffixCondition],
    mode: EnumerationMode,
    start: int,
    stop: int,
) -> np.ndarray:
    if spec.modulus <= NUMPY_SAFE_MODULUS:
        if mode.is_exhaustive:
            t = np.arange(start, stop, dtype=np.int64)
            if cond is None:
                return t
            return cond.beta + t * spec.m ** cond.d
        return np.array(domain_values(spec, cond, mode, start, stop), dtype=np.int64)
    return np.array(domain_values(spec, cond, mode, start, stop), dtype=object)


def coordinate_blocks(
    spec: RingSpec,
    c: Collection,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    start: int = 0,
    stop: Optional[int] = None,
    block_size: int = BLOCK_SIZE,
) -> Iterator[Tuple[np.ndarray, List[np.ndarray]]]:
    """
    Yield (xs, [coordinate arrays]) over enumeration positions start .. stop-1.

    Coordinates are numerators in [m^n]: int64 arrays when m^n fits the
    vectorized path, object arrays of Python ints otherwise. No capacity
    check is done here; callers run ``check_capacity`` once up front.
    """
    if stop is None:
        stop = point_count(spec, cond, mode)
    modulus = spec.modulus
    for lo in range(start, stop, block_size):
        hi = min(lo + block_size, stop)
        xs = _domain_array(spec, cond, mode, lo, hi)
        yield xs, evaluate_collection_array(c, xs, modulus)


def coordinate_matrix(
    spec: RingSpec,
    c: Collection,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
) -> np.ndarray:
    """All points as an (N, s) array of numerators."""
    total = check_capacity(spec, cond, mode, limits)
    blocks = [np.stack(coords, axis=1) for _, coords in coordinate_blocks(spec, c, cond, mode, 0, total)]
    if not blocks:
        return np.zeros((0, c.s), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def phi_n(x: Residue, c: Collection) -> Point:
    """The point (f_1(x), ..., f_s(x)) mod m^n."""
    spec = x.spec
    values = evaluate_collection(c, x.value, spec.modulus)
    return Point(tuple(Residue.from_int(v, spec) for v in values))


def enumerate_points(
    spec: RingSpec,
    c: Collection,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
) -> Iterator[Point]:
    """
    Stream the points phi_n(x) over the (conditioned) domain.

    Exhaustive mode yields m^(n-d) points in ascending x; sampled mode
    yields ``mode.count`` points drawn uniformly from the same domain.
    Capacity is checked before the first point is produced.
    """
    total = check_capacity(spec, cond, mode, limits)
    logger.info("enumerating %d points of [%d^%d] (%s)", total, spec.m, spec.n, mode.kind)
    return _points(spec, c, cond, mode, total)


def _points(spec, c, cond, mode, total):
    for lo in range(0, total, BLOCK_SIZE):
        for x in domain_values(spec, cond, mode, lo, min(lo + BLOCK_SIZE, total)):
            yield phi_n(Residue.from_int(x, spec), c)


def enumerate_with_x(
    spec: RingSpec,
    c: Collection,
    cond: Optional[SuffixCondition] = None,
    mode: EnumerationMode = EXHAUSTIVE,
    limits: Limits = DEFAULT_LIMITS,
) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """Like ``enumerate_points`` but yields (x, numerators) pairs."""
    total = check_capacity(spec, cond, mode, limits)
    modulus = spec.modulus

    def pairs():
        for lo in range(0, total, BLOCK_SIZE):
            for x in domain_values(spec, cond, mode, lo, min(lo + BLOCK_SIZE, total)):
                yield x, evaluate_collection(c, x, modulus)

    return pairs()


def pcg_stream(f: IntPolynomial, x0: Residue, count: int) -> List[UnitPoint]:
    """x0, f(x0), f(f(x0)), ... normalized by m^n; each state from the previous one."""
    if count < 0:
        raise UsageError(f"stream length must be >= 0, got {count}")
    spec = x0.spec
    out = []
    state = x0.value
    for _ in range(count):
        out.append(UnitPoint(state, spec.m, spec.n))
        state = iterate_int(f, state, 1, spec.modulus)
    return out
