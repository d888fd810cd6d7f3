"""Suspension policy for repeated sensitive-topic sessions.

When sensitive themes surface in K or more distinct sessions inside a
W-day window, the participant's system use is halted for D days. Resuming
earlier than that requires an explicit clinician re-evaluation action;
the suspension window itself ends exactly D days after it starts.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Optional

from ..clock import ensure_utc
from ..core.types import ParticipantProfile, ParticipantStatus

DEFAULT_TRIGGER_COUNT = 2
DEFAULT_WINDOW_DAYS = 7
DEFAULT_SUSPENSION_DAYS = 3


@dataclass(frozen=True)
class SuspensionPolicy:
    trigger_count: int = DEFAULT_TRIGGER_COUNT
    window_days: int = DEFAULT_WINDOW_DAYS
    suspension_days: int = DEFAULT_SUSPENSION_DAYS

    def __post_init__(self) -> None:
        if self.trigger_count < 1 or self.window_days < 1 or self.suspension_days < 1:
            raise ValueError("suspension policy parameters must be at least 1")


@dataclass(frozen=True)
class FlaggedSession:
    """A session in which a sensitive-topic turn occurred."""

    session_id: str
    flagged_at: datetime


def apply_suspension_policy(
    participant: ParticipantProfile,
    sensitive_session_history: list[FlaggedSession],
    policy: SuspensionPolicy,
    now: datetime,
) -> Optional[datetime]:
    """Returns the suspension-until instant, or None for no change."""
    now = ensure_utc(now)
    if participant.status is not ParticipantStatus.ACTIVE:
        return None
    window_start = now - timedelta(days=policy.window_days)
    in_window = {f.session_id for f in sensitive_session_history if f.flagged_at >= window_start}
    if len(in_window) >= policy.trigger_count:
        return now + timedelta(days=policy.suspension_days)
    return None
