"""Statistics and cooperative deadlines shared by the branching solvers."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Optional


class SearchTimeout(Exception):
    """Raised inside a solver once its deadline has passed."""


@dataclass
class BranchStats:
    nodes_expanded: int = 0
    max_depth: int = 0
    time_ms: float = 0.0
    measure_checks: int = 0

    def to_dict(self):
        return asdict(self)


def deadline_after(ms: Optional[float]) -> Optional[float]:
    """Absolute ``time.monotonic()`` deadline ``ms`` milliseconds from now."""
    if ms is None:
        return None
    return time.monotonic() + ms / 1000.0


class SearchContext:
    """Counts expanded nodes and polls the deadline every ``poll`` nodes."""

    def __init__(self, stats: Optional[BranchStats] = None,
                 deadline: Optional[float] = None, poll: int = 64):
        self.stats = stats if stats is not None else BranchStats()
        self.deadline = deadline
        self.poll = poll
        self._t0 = time.perf_counter()

    def tick(self, depth: int):
        st = self.stats
        st.nodes_expanded += 1
        if depth > st.max_depth:
            st.max_depth = depth
        if self.deadline is not None and (st.nodes_expanded - 1) % self.poll == 0:
            if time.monotonic() > self.deadline:
                raise SearchTimeout()

    def finish(self):
        self.stats.time_ms += (time.perf_counter() - self._t0) * 1000.0
        return self.stats
