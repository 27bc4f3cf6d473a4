"""Internal worker-count policy.

TREELAT_THREADS (a positive integer) caps internal parallelism; when it is
absent the implementation default of one worker (sequential execution)
applies.  Results never depend on the worker count.
"""

from __future__ import annotations

import os

_DEFAULT_WORKERS = 1


def worker_count() -> int:
    raw = os.environ.get("TREELAT_THREADS")
    if raw is None:
        return _DEFAULT_WORKERS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TREELAT_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"TREELAT_THREADS must be a positive integer, got {raw!r}")
    return value
