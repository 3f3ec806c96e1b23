"""Deterministic work distribution.

RT_THREADS caps worker parallelism.  Results are reduced in item order
(lowest candidate index wins), so output is identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get("RT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def first_hit(
    items: Iterable[T],
    fn: Callable[[T], R | None],
    workers: int | None = None,
    chunk: int = 16,
) -> tuple[int, T, R] | None:
    """Apply fn in item order; return the first (index, item, result) with result not None.

    With workers > 1 items are evaluated in order-preserving chunks, so the
    winning candidate is independent of scheduling.
    """
    if workers is None:
        workers = worker_count()
    if workers <= 1:
        for i, item in enumerate(items):
            out = fn(item)
            if out is not None:
                return i, item, out
        return None
    buf: list[T] = []
    base = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        def flush():
            nonlocal base
            for off, out in enumerate(pool.map(fn, buf)):
                if out is not None:
                    return base + off, buf[off], out
            base += len(buf)
            buf.clear()
            return None

        for item in items:
            buf.append(item)
            if len(buf) >= workers * chunk:
                hit = flush()
                if hit is not None:
                    return hit
        if buf:
            return flush()
    return None
