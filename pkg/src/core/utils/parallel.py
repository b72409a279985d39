"""Ordered fan-out over a thread pool.

Results always come back in submission order, so any reduction built on top
of `ordered_map` is independent of the worker count.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """Apply `fn` to every item with up to `jobs` threads; keep input order."""
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    items = list(items)
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(jobs, len(items))) as executor:
        return list(executor.map(fn, items))


def chunk_ranges(start: int, stop: int, size: int) -> Iterator[tuple[int, int]]:
    """Split [start, stop) into consecutive half-open ranges of at most `size`."""
    size = max(1, size)
    lo = start
    while lo < stop:
        hi = min(lo + size, stop)
        yield lo, hi
        lo = hi
