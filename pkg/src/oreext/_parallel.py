"""Order-preserving chunk execution on a process pool."""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def run_chunks(fn: Callable[[T], R], chunks: Sequence[T], jobs: int = 1) -> list[R]:
    """Apply ``fn`` to every chunk; results come back in chunk order.

    Chunk boundaries are chosen by the caller independently of ``jobs`` so the
    aggregated result never depends on the worker count.
    """
    if jobs <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
        return list(ex.map(fn, chunks))


def split(items: Sequence[T], size: int) -> list[Sequence[T]]:
    return [items[i:i + size] for i in range(0, len(items), size)]
