"""Identifier factories.

The default factory is sequential per id kind, which keeps replays of the
same script byte-identical. A uuid4 factory is available for deployments
that want opaque ids instead.
"""

from __future__ import annotations

import threading
import uuid
from collections import defaultdict
from typing import Protocol


class IdFactory(Protocol):
    def new_id(self, kind: str) -> str: ...


class SequentialIds:
    """Ids like ``msg-000001``, counted per kind. Thread-safe."""

    def __init__(self) -> None:
        self._counters: dict[str, int] = defaultdict(int)
        self._lock = threading.Lock()

    def new_id(self, kind: str) -> str:
        with self._lock:
            self._counters[kind] += 1
            return f"{kind}-{self._counters[kind]:06d}"


class RandomIds:
    def new_id(self, kind: str) -> str:
        return f"{kind}-{uuid.uuid4().hex}"
