"""Worker-count and chunking helpers shared by the parallel kernels."""

import os
from typing import List

from config import THREADS_ENV
from .console import warn


def worker_count() -> int:
    """
    Number of worker threads allowed, read from FSW_THREADS at call time.

    Unset, empty or invalid values fall back to the CPU count.
    """
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value >= 1:
            return value
        warn(f"ignoring {THREADS_ENV}={raw!r}; expected a positive integer")
    return os.cpu_count() or 1


def chunk_slices(total: int, chunk: int) -> List[slice]:
    """Split range(total) into consecutive slices of at most `chunk` items."""
    chunk = max(1, int(chunk))
    return [slice(start, min(start + chunk, total)) for start in range(0, total, chunk)]
