"""Partitioned scans over the canonical element order."""
from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

LOGGER = logging.getLogger(__name__)

T = TypeVar("T")


def scan_partitioned(
    worker: Callable[[int, int], T],
    total: int,
    *,
    chunk: int,
    workers: int = 1,
) -> list[T]:
    """Run ``worker(start, stop)`` over consecutive index ranges.

    Results come back in range order whatever the worker count, so callers that
    take the first hit get the canonical minimum.
    """
    chunk = max(1, chunk)
    bounds = [(start, min(start + chunk, total)) for start in range(0, total, chunk)]
    LOGGER.debug("Scanning %s items in %s chunks on %s workers", total, len(bounds), workers)
    if workers <= 1 or len(bounds) <= 1:
        return [worker(start, stop) for start, stop in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda bound: worker(*bound), bounds))


def rows_per_chunk(row_width: int, budget: int = 2**22) -> int:
    """How many batch rows fit in ``budget`` int64 cells."""
    return max(1, budget // max(1, row_width))
