"""Optional thread fan-out for embarrassingly parallel command work.

The DESCM_THREADS environment variable caps the worker count; 0 or unset
means sequential. Results always come back in submission order, so output
is identical either way.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_limit() -> int:
    raw = os.environ.get("DESCM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"DESCM_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"DESCM_THREADS must be >= 0, got {value}")
    return max(value, 1)


def run_ordered(fn, items):
    """Map fn over items, possibly on threads, preserving order."""
    items = list(items)
    limit = thread_limit()
    if limit < 2 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(limit, len(items))) as pool:
        return list(pool.map(fn, items))
