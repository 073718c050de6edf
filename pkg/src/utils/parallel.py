"""
Thread-pool helpers.
Results always come back in input order, so output never depends on the thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """
    Apply func to every item, optionally on a thread pool.

    Args:
        func: Pure function of one item
        items: Work items
        threads: Worker count (1 runs inline)

    Returns:
        Results in the order of items
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")

    items = list(items)
    if threads == 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))
