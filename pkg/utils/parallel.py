from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config import MLDKIT_THREADS


T = TypeVar("T")
R = TypeVar("R")

# Below this many partitions a pool costs more than it saves
DEFAULT_MIN_PARTITIONS = 64


def partitioned_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: Optional[int] = None,
    min_partitions: int = DEFAULT_MIN_PARTITIONS,
) -> List[R]:
    """
    Apply fn to every item and return the results in input order.

    Work is spread over a thread pool sized by MLDKIT_THREADS when there are
    enough partitions to be worth it. Output order never depends on the
    schedule.
    """
    items = list(items)
    workers = MLDKIT_THREADS if workers is None else workers
    if workers <= 1 or len(items) < min_partitions:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
