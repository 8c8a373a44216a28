"""Order-preserving process pool used by the engine and the pipelines."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """``list(map(fn, items))``, spread over ``threads`` worker processes.

    Results come back in input order, so callers fold them deterministically.
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def chunked(items: Sequence[T], parts: int) -> list[list[T]]:
    items = list(items)
    parts = max(1, min(parts, len(items)))
    size = -(-len(items) // parts) if items else 1
    return [items[i:i + size] for i in range(0, len(items), size)]
