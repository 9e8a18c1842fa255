from __future__ import annotations

import time
from types import TracebackType


class Stopwatch:
    """
    Wall-clock timer for a block of work.

    >>> with Stopwatch() as watch:
    >>>     fit(...)
    >>> watch.elapsed  # seconds
    """

    start: float
    elapsed: float

    def __init__(self) -> None:
        self.start = 0.0
        self.elapsed = 0.0

    def __enter__(self) -> Stopwatch:
        self.start = time.perf_counter()
        return self

    def __exit__(
        self, exctype: type[BaseException] | None, exc: BaseException | None, traceback: TracebackType | None
    ) -> None:
        self.elapsed = time.perf_counter() - self.start
