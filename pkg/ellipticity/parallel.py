"""
Order-preserving process-pool helpers. Results are always consumed in input order, so the answer of a search does
not depend on how many workers ran it.
"""
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional
import logging

logger = logging.getLogger(__name__)


def ordered_map(func: Callable, items: Iterable, jobs: int = 1) -> List:
    """
    [func(x) for x in items], optionally spread over `jobs` worker processes.
    func and the items must be picklable when jobs > 1
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with Pool(processes=min(jobs, len(items))) as pool:
        return pool.map(func, items)


def ordered_first(func: Callable, items: Iterable, jobs: int = 1) -> Optional[object]:
    """
    returns the first non-None func(x), in input order, or None.
    With jobs > 1 later items may be evaluated speculatively; their results are discarded.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        for x in items:
            result = func(x)
            if result is not None:
                return result
        return None

    logger.debug("evaluating {0} candidates on {1} workers".format(len(items), jobs))
    with Pool(processes=min(jobs, len(items))) as pool:
        for result in pool.imap(func, items):
            if result is not None:
                pool.terminate()
                return result
    return None
