"""Post-session human-review queue.

Every closed session must be reviewed within twelve hours. Sessions whose
review alert is still unacknowledged past the deadline surface here,
oldest first.
"""

from __future__ import annotations

from datetime import datetime, timedelta

from ..clock import ensure_utc
from ..core.types import AlertEvent, AlertKind, Session, SessionStatus

REVIEW_WINDOW_HOURS = 12


def review_due_at(ended_at: datetime) -> datetime:
    return ensure_utc(ended_at) + timedelta(hours=REVIEW_WINDOW_HOURS)


def review_queue(
    sessions: list[Session],
    alerts: list[AlertEvent],
    now: datetime,
) -> list[Session]:
    """Closed sessions past their review deadline with no acknowledgment."""
    now = ensure_utc(now)
    unacked = {
        a.session_id
        for a in alerts
        if a.kind is AlertKind.REVIEW_DUE and a.acknowledged_at is None and a.session_id
    }
    due = [
        s
        for s in sessions
        if s.status is SessionStatus.CLOSED
        and s.session_id in unacked
        and s.ended_at is not None
        and review_due_at(s.ended_at) <= now
    ]
    due.sort(key=lambda s: (s.ended_at, s.session_id))
    return due
