"""Worker configuration and the thread pool used for fan-out"""
import os
from multiprocessing.pool import ThreadPool

from .log import logger

THREADS_ENV_VAR = "CLIQUE_LAB_THREADS"


def get_num_workers():
    """Number of workers to use, capped by the CLIQUE_LAB_THREADS env var

    Returns:
        int: at least 1; defaults to the machine's cpu count
    """
    default = os.cpu_count() or 1
    value = os.environ.get(THREADS_ENV_VAR)
    if not value:
        return default
    try:
        cap = int(value)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, value)
        return default
    return max(1, min(cap, default))


def ordered_map(func, items, workers=None):
    """Apply `func` to every item, returning results in input order

    Results never depend on scheduling: each result is collected by position.

    Args:
        func (callable): one-argument function
        items (iterable): inputs
        workers (int): optional override of `get_num_workers()`

    Returns:
        list: func(item) for each item, same order as `items`
    """
    items = list(items)
    if workers is None:
        workers = get_num_workers()
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    pool = ThreadPool(processes=min(workers, len(items)))
    try:
        async_results = [pool.apply_async(func, (item,)) for item in items]
        return [res.get() for res in async_results]
    finally:
        pool.close()
        pool.join()
