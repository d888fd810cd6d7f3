"""Clock abstraction so every timestamp in the system is injectable.

Simulation and tests use :class:`ManualClock`; replaying the same script
against the same starting instant yields byte-identical event logs.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone
from typing import Protocol


def utc(year: int, month: int, day: int, hour: int = 0, minute: int = 0, second: int = 0) -> datetime:
    return datetime(year, month, day, hour, minute, second, tzinfo=timezone.utc)


def ensure_utc(ts: datetime) -> datetime:
    if ts.tzinfo is None:
        raise ValueError("naive datetime; all instants must be timezone-aware UTC")
    return ts.astimezone(timezone.utc)


class Clock(Protocol):
    def now(self) -> datetime: ...


class SystemClock:
    def now(self) -> datetime:
        return datetime.now(timezone.utc)


class ManualClock:
    """Clock that only moves when told to."""

    def __init__(self, start: datetime) -> None:
        self._now = ensure_utc(start)

    def now(self) -> datetime:
        return self._now

    def advance(self, seconds: float = 0.0, days: float = 0.0) -> datetime:
        self._now = self._now + timedelta(seconds=seconds, days=days)
        return self._now

    def set(self, instant: datetime) -> None:
        self._now = ensure_utc(instant)
