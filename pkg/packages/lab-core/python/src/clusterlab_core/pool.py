"""Process-pool helper: map a top-level function over task tuples, results in task order."""
import logging
import os
from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence, TypeVar

from tqdm import tqdm

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "CLUSTERLAB_WORKERS"


def default_workers() -> int:
    value = os.getenv(WORKERS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning("ignoring non-integer %s=%r", WORKERS_ENV, value)
    return os.cpu_count() or 1


def split_range(total: int, parts: int) -> List[range]:
    """Cut range(total) into at most ``parts`` contiguous, non-empty chunks."""
    parts = max(1, min(parts, total)) if total else 1
    size, extra = divmod(total, parts)
    chunks = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        chunks.append(range(start, stop))
        start = stop
    return chunks


def run_partitioned(
    fn: Callable[[T], R],
    tasks: Sequence[T],
    workers: Optional[int] = None,
    progress: bool = False,
    desc: str = "tasks",
) -> List[R]:
    """
    Apply ``fn`` to every task, in a process pool when ``workers > 1``.

    ``fn`` must be a module-level function so it pickles. The returned list is
    always in task order, so callers that merge with exact accumulators get
    the same answer for any worker count.
    """
    workers = default_workers() if workers is None else workers
    bar = tqdm(total=len(tasks), desc=desc, disable=not progress, leave=False)
    try:
        if workers <= 1 or len(tasks) <= 1:
            results = []
            for task in tasks:
                results.append(fn(task))
                bar.update(1)
            return results
        processes = min(workers, len(tasks))
        logger.debug("running %d tasks on %d processes", len(tasks), processes)
        with Pool(processes=processes) as pool:
            results = []
            for result in pool.imap(fn, tasks):
                results.append(result)
                bar.update(1)
            return results
    finally:
        bar.close()
