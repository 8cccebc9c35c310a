# bispectral/observability/metrics.py
"""
Process-wide solver counters and stage timings.

    metrics.counter("solver.systems").inc()
    with metrics.timer("solver.nullspace") as t:
        ...
    t.elapsed_ms
"""

from __future__ import annotations
import threading
import time
from typing import Dict, Optional


class Counter:
    def __init__(self):
        self.value = 0
        self.lock = threading.Lock()

    def inc(self, amount: int = 1) -> None:
        with self.lock:
            self.value += amount

    def get(self) -> int:
        with self.lock:
            return self.value


class Timing:
    """Calls, total and slowest wall time of one stage, in integer milliseconds."""

    def __init__(self):
        self.calls = 0
        self.total_ms = 0
        self.max_ms = 0
        self.lock = threading.Lock()

    def record(self, elapsed_ms: int) -> None:
        with self.lock:
            self.calls += 1
            self.total_ms += elapsed_ms
            self.max_ms = max(self.max_ms, elapsed_ms)

    def summary(self) -> Dict[str, int]:
        with self.lock:
            return {"calls": self.calls, "total_ms": self.total_ms, "max_ms": self.max_ms}


class StageTimer:
    def __init__(self, timing: Timing):
        self.timing = timing
        self.elapsed_ms = 0
        self._start: Optional[int] = None

    def __enter__(self) -> "StageTimer":
        self._start = time.perf_counter_ns()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.elapsed_ms = (time.perf_counter_ns() - self._start) // 1_000_000
        self.timing.record(self.elapsed_ms)


class MetricsRegistry:
    """Thread-safe registry; solver threads share the module-level instance."""

    def __init__(self):
        self._counters: Dict[str, Counter] = {}
        self._timings: Dict[str, Timing] = {}
        self._lock = threading.Lock()

    def counter(self, name: str) -> Counter:
        with self._lock:
            return self._counters.setdefault(name, Counter())

    def timing(self, name: str) -> Timing:
        with self._lock:
            return self._timings.setdefault(name, Timing())

    def timer(self, name: str) -> StageTimer:
        return StageTimer(self.timing(name))

    def snapshot(self) -> Dict[str, object]:
        with self._lock:
            counters = dict(self._counters)
            timings = dict(self._timings)
        out: Dict[str, object] = {name: c.get() for name, c in counters.items()}
        out.update({name: t.summary() for name, t in timings.items()})
        return out

    def reset(self) -> None:
        with self._lock:
            self._counters.clear()
            self._timings.clear()


# singleton
metrics = MetricsRegistry()
