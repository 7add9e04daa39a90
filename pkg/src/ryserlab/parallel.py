"""Order-preserving process pool; one worker means plain in-process map."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "RYSERLAB_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


class Workers:
    def __init__(self, threads: int | None = None):
        self.threads = threads if threads is not None else default_threads()
        self._pool: ProcessPoolExecutor | None = None

    def __enter__(self) -> "Workers":
        if self.threads > 1:
            self._pool = ProcessPoolExecutor(self.threads)
        return self

    def __exit__(self, *exc) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self._pool is None or len(items) < 2:
            return [fn(x) for x in items]
        chunk = max(1, len(items) // (self.threads * 4))
        return list(self._pool.map(fn, items, chunksize=chunk))
