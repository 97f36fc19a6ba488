"""Deterministic parallel map for independent pure work items.

Results always come back in input order, so accumulation downstream is
reproducible regardless of the worker count.  The worker count defaults to
the GRTILT_THREADS environment variable (serial when unset or 1).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count(override: int | None = None) -> int:
    if override is not None:
        return max(1, int(override))
    raw = os.environ.get("GRTILT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items, threads: int | None = None) -> list:
    """Map fn over items, in order, optionally across processes."""
    items = list(items)
    n = worker_count(threads)
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * n))
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
