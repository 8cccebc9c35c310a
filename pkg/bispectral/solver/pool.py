# bispectral/solver/pool.py
from __future__ import annotations
import concurrent.futures
import logging
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """
    Thread pool for independent assembly jobs (one column per unknown).

    Results always come back in submission order, so the assembled system is
    identical whatever the worker count.
    """

    def __init__(self, thread_workers: int = 4):
        self.thread_workers = max(1, int(thread_workers))
        self._executor: Optional[concurrent.futures.ThreadPoolExecutor] = None
        if self.thread_workers > 1:
            self._executor = concurrent.futures.ThreadPoolExecutor(
                max_workers=self.thread_workers, thread_name_prefix="bispectral-assembly"
            )

    # --------------------------
    # Public API
    # --------------------------
    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        if self._executor is None or len(items) < 2:
            return [fn(item) for item in items]
        try:
            return list(self._executor.map(fn, items))
        except Exception:
            logger.exception("WorkerPool.map failed")
            raise

    # --------------------------------
    # Shutdown
    # --------------------------------
    def shutdown(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc) -> None:
        self.shutdown()
