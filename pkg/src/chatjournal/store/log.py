"""Append-only event log with optimistic concurrency.

Two backends share one interface: an in-memory list for simulation and
tests, and a file-backed log of JSON-lines segment files for durable
single-node deployments. Appends are atomic per call: either every event
in the batch is committed and the head advances by the batch size, or
nothing changes. Readers iterate immutable committed prefixes, so they
never block writers.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from ..errors import ConflictError
from .events import DomainEvent


class EventLog:
    """Base log: sequencing, optimistic head checks, change notification."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._listeners: list[Callable[[list[DomainEvent]], None]] = []

    # -- storage hooks -------------------------------------------------
    def _head(self) -> int:
        raise NotImplementedError

    def _store(self, events: list[DomainEvent]) -> None:
        raise NotImplementedError

    def _read(self, start: int, stop: int) -> Iterator[DomainEvent]:
        """Yield committed events with start <= event_id <= stop."""
        raise NotImplementedError

    # -- public API ----------------------------------------------------
    @property
    def head(self) -> int:
        with self._lock:
            return self._head()

    def append(self, events: Sequence[DomainEvent], expected_head: int | None = None) -> int:
        """Commit a batch atomically; returns the new head.

        With ``expected_head`` given, fails with ConflictError when another
        writer advanced the log first, leaving the store unchanged.
        """
        if not events:
            return self.head
        with self._lock:
            head = self._head()
            if expected_head is not None and head != expected_head:
                raise ConflictError(f"log head is {head}, writer expected {expected_head}")
            stamped = [e.with_id(head + i + 1) for i, e in enumerate(events)]
            self._store(stamped)
            listeners = list(self._listeners)
        for cb in listeners:
            cb(stamped)
        return stamped[-1].event_id

    def replay(self, start: int = 1, stop: int | None = None) -> Iterator[DomainEvent]:
        """Events with start <= event_id <= stop, in order. Empty when start > stop."""
        with self._lock:
            head = self._head()
        stop = head if stop is None else min(stop, head)
        if start > stop:
            return iter(())
        return self._read(max(start, 1), stop)

    def subscribe(self, callback: Callable[[list[DomainEvent]], None]) -> Callable[[], None]:
        """Register an after-commit listener; returns an unsubscribe handle."""
        with self._lock:
            self._listeners.append(callback)

        def unsubscribe() -> None:
            with self._lock:
                if callback in self._listeners:
                    self._listeners.remove(callback)

        return unsubscribe


class MemoryEventLog(EventLog):
    def __init__(self) -> None:
        super().__init__()
        self._events: list[DomainEvent] = []

    def _head(self) -> int:
        return len(self._events)

    def _store(self, events: list[DomainEvent]) -> None:
        self._events.extend(events)

    def _read(self, start: int, stop: int) -> Iterator[DomainEvent]:
        return iter(self._events[start - 1 : stop])


class FileEventLog(EventLog):
    """JSON-lines segments under one directory, one event per line.

    Segment files are named by the sequence number of their first event
    (``events-00000001.jsonl``). A new segment starts every
    ``segment_size`` events. Batches are written and flushed before the
    in-memory head advances, so a torn final line after a crash is
    truncated on open rather than surfacing as a gap.
    """

    def __init__(self, directory: str | Path, segment_size: int = 4096, fsync: bool = False) -> None:
        super().__init__()
        self._dir = Path(directory)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._segment_size = segment_size
        self._fsync = fsync
        self._index: list[tuple[int, Path]] = []  # (first_event_id, path)
        self._count = 0
        self._recover()

    def _segments(self) -> list[Path]:
        return sorted(self._dir.glob("events-*.jsonl"))

    def _recover(self) -> None:
        self._count = 0
        self._index = []
        for path in self._segments():
            first = int(path.stem.split("-")[1])
            lines = path.read_text(encoding="utf-8").splitlines()
            good = []
            for line in lines:
                try:
                    json.loads(line)
                    good.append(line)
                except json.JSONDecodeError:
                    break  # torn tail from an interrupted write
            if len(good) != len(lines):
                path.write_text("".join(l + "\n" for l in good), encoding="utf-8")
            self._index.append((first, path))
            self._count = first - 1 + len(good)

    def _head(self) -> int:
        return self._count

    def _store(self, events: list[DomainEvent]) -> None:
        i = 0
        while i < len(events):
            first_in_batch = events[i]
            if not self._index or (first_in_batch.event_id - self._index[-1][0]) >= self._segment_size:
                path = self._dir / f"events-{first_in_batch.event_id:08d}.jsonl"
                path.touch()
                self._index.append((first_in_batch.event_id, path))
            segment_first, path = self._index[-1]
            capacity = self._segment_size - (first_in_batch.event_id - segment_first)
            chunk = events[i : i + capacity]
            with path.open("a", encoding="utf-8") as fh:
                fh.write("".join(e.to_line() + "\n" for e in chunk))
                fh.flush()
                if self._fsync:
                    import os

                    os.fsync(fh.fileno())
            self._count = chunk[-1].event_id
            i += len(chunk)

    def _read(self, start: int, stop: int) -> Iterator[DomainEvent]:
        def gen() -> Iterator[DomainEvent]:
            for first, path in self._index:
                with path.open(encoding="utf-8") as fh:
                    for offset, line in enumerate(fh):
                        event_id = first + offset
                        if event_id > stop:
                            return
                        if event_id >= start:
                            yield DomainEvent.from_json(json.loads(line))

        return gen()


def iter_lines(events: Iterable[DomainEvent]) -> Iterator[str]:
    for e in events:
        yield e.to_line()
