"""Domain events: the single source of truth for every state change.

One event kind exists per state change across the system. Events are
immutable envelopes around canonical-JSON payloads; the log assigns the
gapless sequence number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

from ..core.serialize import canonical_dumps, ts_from_json, ts_to_json

PARTICIPANT_REGISTERED = "participant_registered"
ASSESSMENT_SUBMITTED = "assessment_submitted"
SESSION_STARTED = "session_started"
MESSAGE_APPENDED = "message_appended"
STAGE_RECORDED = "stage_recorded"
TURN_AUDITED = "turn_audited"
SUMMARY_VERSION_ADDED = "summary_version_added"
SESSION_CLOSED = "session_closed"
SESSION_HALTED = "session_halted"
ALERT_RAISED = "alert_raised"
ALERT_DELIVERY_CHANGED = "alert_delivery_changed"
ALERT_ACKNOWLEDGED = "alert_acknowledged"
PARTICIPANT_SUSPENDED = "participant_suspended"
PARTICIPANT_RESUMED = "participant_resumed"
PARTICIPANT_DROPPED = "participant_dropped"
INTERACTION_DAY_RECORDED = "interaction_day_recorded"
PROVIDER_CALL_LOGGED = "provider_call_logged"

ALL_KINDS = frozenset(
    {
        PARTICIPANT_REGISTERED,
        ASSESSMENT_SUBMITTED,
        SESSION_STARTED,
        MESSAGE_APPENDED,
        STAGE_RECORDED,
        TURN_AUDITED,
        SUMMARY_VERSION_ADDED,
        SESSION_CLOSED,
        SESSION_HALTED,
        ALERT_RAISED,
        ALERT_DELIVERY_CHANGED,
        ALERT_ACKNOWLEDGED,
        PARTICIPANT_SUSPENDED,
        PARTICIPANT_RESUMED,
        PARTICIPANT_DROPPED,
        INTERACTION_DAY_RECORDED,
        PROVIDER_CALL_LOGGED,
    }
)


@dataclass(frozen=True)
class DomainEvent:
    event_id: int  # gapless sequence number assigned by the log; 0 = unassigned
    kind: str
    occurred_at: datetime
    actor: str  # "Patient" | "Assistant" | "System" | "Clinician:<id>"
    payload: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown event kind: {self.kind}")

    def with_id(self, event_id: int) -> "DomainEvent":
        return DomainEvent(event_id, self.kind, self.occurred_at, self.actor, self.payload)

    def to_json(self) -> dict[str, Any]:
        return {
            "event_id": self.event_id,
            "kind": self.kind,
            "occurred_at": ts_to_json(self.occurred_at),
            "actor": self.actor,
            "payload": self.payload,
        }

    def to_line(self) -> str:
        return canonical_dumps(self.to_json())

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "DomainEvent":
        return cls(
            event_id=d["event_id"],
            kind=d["kind"],
            occurred_at=ts_from_json(d["occurred_at"]),
            actor=d["actor"],
            payload=d["payload"],
        )


def event(kind: str, occurred_at: datetime, actor: str, payload: dict[str, Any]) -> DomainEvent:
    """Build an unassigned event; the log stamps the sequence number."""
    return DomainEvent(0, kind, occurred_at, actor, payload)
