"""Operation counters for the search machinery.

Counting is opt-in: code calls :func:`count` unconditionally, and the numbers
only land somewhere while a :func:`track` block is active in the current
context. Nested blocks roll their totals up into the enclosing block.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, asdict
from typing import Iterator


@dataclass
class OpStats:
    mulmods: int = 0
    gcds: int = 0
    inversions: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


_active: ContextVar[OpStats | None] = ContextVar("powfactor_opstats", default=None)


def count(mulmods: int = 0, gcds: int = 0, inversions: int = 0) -> None:
    stats = _active.get()
    if stats is None:
        return
    stats.mulmods += mulmods
    stats.gcds += gcds
    stats.inversions += inversions


@contextmanager
def track() -> Iterator[OpStats]:
    outer = _active.get()
    stats = OpStats()
    token = _active.set(stats)
    try:
        yield stats
    finally:
        _active.reset(token)
        if outer is not None:
            outer.mulmods += stats.mulmods
            outer.gcds += stats.gcds
            outer.inversions += stats.inversions
