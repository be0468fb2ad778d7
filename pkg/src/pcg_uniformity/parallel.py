"""
Range partitioning and process-pool fan-out.

Workers are top-level functions taking one task tuple, so they pickle.
Results come back in task order; callers reduce them with commutative
operations, which keeps integer outputs identical for any thread count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .errors import UsageError

logger = logging.getLogger(__name__)


def partition_range(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    """
    Split [lo, hi) into at most ``parts`` contiguous, ordered, nonempty pieces.

    Piece sizes differ by at most one; an empty range gives no pieces.
    """
    if parts < 1:
        raise UsageError(f"need at least one part, got {parts}")
    size = hi - lo
    if size <= 0:
        return []
    parts = min(parts, size)
    base, extra = divmod(size, parts)
    out = []
    start = lo
    for p in range(parts):
        stop = start + base + (1 if p < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def map_reduce(
    worker: Callable[[Any], Any],
    tasks: Sequence[Any],
    threads: int = 1,
    combine: Optional[Callable[[Any, Any], Any]] = None,
):
    """
    Run ``worker`` on every task and optionally fold the results.

    Args:
        worker: picklable top-level function of one task
        tasks: task payloads
        threads: 1 runs in-process; more uses a ProcessPoolExecutor
        combine: binary reduction applied in task order, or None

    Returns:
        The list of results in task order, or their fold under ``combine``.
    """
    if threads < 1:
        raise UsageError(f"thread count must be >= 1, got {threads}")
    tasks = list(tasks)
    if threads == 1 or len(tasks) <= 1:
        results = [worker(task) for task in tasks]
    else:
        logger.debug("dispatching %d tasks to %d workers", len(tasks), threads)
        with ProcessPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(worker, tasks))
    if combine is None:
        return results
    return reduce(combine, results)
