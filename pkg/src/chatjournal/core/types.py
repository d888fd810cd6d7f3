"""Domain types shared by every other module.

All values here are immutable after construction and validate their own
invariants, so they are safe to share between threads. State changes go
through the persistence layer, which builds fresh values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import date, datetime
from enum import Enum
from typing import Any, Optional

from ..clock import ensure_utc
from .affirmative import AffirmativeRules, affirmative
from .scoring import SeverityBand, classify_cesdc
from .stages import Stage
from .text import syllable_count

SELF_HARM_ITEM_INDEX = 8  # questionnaire item 9, zero-based
SELF_HARM_ITEM_THRESHOLD = 2  # item answers of 2..3 trip the gate


class Author(Enum):
    PATIENT = "Patient"
    ASSISTANT = "Assistant"
    SYSTEM = "System"


class ParticipantStatus(Enum):
    ACTIVE = "Active"
    SUSPENDED = "Suspended"
    DROPPED = "Dropped"


class SessionMode(Enum):
    STANDARD = "Standard"
    CALMING_CONTENT = "CalmingContent"


class SessionStatus(Enum):
    OPEN = "Open"
    CLOSED = "Closed"
    HALTED = "Halted"


class AlertKind(Enum):
    GATE_TRIP = "GateTrip"
    SENSITIVE_TURN = "SensitiveTurn"
    SUSPENSION_STARTED = "SuspensionStarted"
    REMINDER_DUE = "ReminderDue"
    DROPOUT_FLAG = "DropoutFlag"
    REVIEW_DUE = "ReviewDue"


class DeliveryState(Enum):
    PENDING = "Pending"
    DELIVERED = "Delivered"
    FAILED = "Failed"


@dataclass(frozen=True)
class DeliveryStatus:
    state: DeliveryState = DeliveryState.PENDING
    reason: Optional[str] = None

    def __post_init__(self) -> None:
        if self.state is DeliveryState.FAILED and not self.reason:
            raise ValueError("failed delivery requires a reason")
        if self.state is not DeliveryState.FAILED and self.reason is not None:
            raise ValueError("only failed delivery carries a reason")


@dataclass(frozen=True)
class ParticipantProfile:
    participant_id: str
    alias: str
    age: int
    gender: str
    severity_band: SeverityBand
    enrollment_date: date
    timezone: str
    status: ParticipantStatus = ParticipantStatus.ACTIVE
    suspended_until: Optional[datetime] = None
    cesdc_score: Optional[int] = None

    def __post_init__(self) -> None:
        if self.age < 0:
            raise ValueError("age must be non-negative")
        if (self.status is ParticipantStatus.SUSPENDED) != (self.suspended_until is not None):
            raise ValueError("suspended status and until-timestamp must travel together")
        if self.cesdc_score is not None and classify_cesdc(self.cesdc_score) is not self.severity_band:
            raise ValueError("severity band inconsistent with stored CES-DC score")

    def is_suspended(self, now: datetime) -> bool:
        """Blocked from interacting: suspended and the window has not elapsed."""
        return (
            self.status is ParticipantStatus.SUSPENDED
            and self.suspended_until is not None
            and ensure_utc(now) < self.suspended_until
        )


@dataclass(frozen=True)
class Message:
    message_id: str
    session_id: str
    author: Author
    text: str
    timestamp: datetime
    stage_at_emission: Optional[Stage] = None
    length_units: int = field(default=-1)

    def __post_init__(self) -> None:
        units = syllable_count(self.text)
        if self.length_units == -1:
            object.__setattr__(self, "length_units", units)
        elif self.length_units != units:
            raise ValueError("length_units out of sync with text")


def gate_verdict(
    items: tuple[int, ...] | list[int],
    open_answer: str,
    rules: AffirmativeRules | None = None,
) -> bool:
    """The safety-gate rule: self-harm item at moderate-or-higher, or an
    affirmative open answer."""
    return items[SELF_HARM_ITEM_INDEX] >= SELF_HARM_ITEM_THRESHOLD or affirmative(open_answer, rules)


@dataclass(frozen=True)
class Assessment:
    assessment_id: str
    participant_id: str
    items: tuple[int, ...]
    open_answer: str
    total: int
    gate_tripped: bool
    created_at: datetime

    def __post_init__(self) -> None:
        if len(self.items) != 9:
            raise ValueError("assessment requires exactly 9 items")
        if any(not 0 <= v <= 3 for v in self.items):
            raise ValueError("item scores must be within 0..3")
        if self.total != sum(self.items):
            raise ValueError("total must equal the item sum")

    @classmethod
    def build(
        cls,
        assessment_id: str,
        participant_id: str,
        items: list[int] | tuple[int, ...],
        open_answer: str,
        created_at: datetime,
        rules: AffirmativeRules | None = None,
    ) -> "Assessment":
        items = tuple(items)
        return cls(
            assessment_id=assessment_id,
            participant_id=participant_id,
            items=items,
            open_answer=open_answer,
            total=sum(items),
            gate_tripped=gate_verdict(items, open_answer, rules),
            created_at=ensure_utc(created_at),
        )


@dataclass(frozen=True)
class JournalEntry:
    version: int
    text: str
    author: Author
    created_at: datetime

    def __post_init__(self) -> None:
        if self.version < 0:
            raise ValueError("version must be non-negative")
        if self.author is Author.SYSTEM:
            raise ValueError("journal entries are authored by assistant or patient")


@dataclass(frozen=True)
class Session:
    session_id: str
    participant_id: str
    assessment_id: str
    started_at: datetime
    mode: SessionMode
    status: SessionStatus = SessionStatus.OPEN
    ended_at: Optional[datetime] = None
    messages: tuple[Message, ...] = ()
    stage_trace: tuple[tuple[int, Optional[Stage]], ...] = ()
    summary_versions: tuple[JournalEntry, ...] = ()
    reflection: Optional[str] = None
    config_hash: str = ""

    def __post_init__(self) -> None:
        if (self.status is not SessionStatus.OPEN) and self.ended_at is None:
            raise ValueError("finished sessions carry ended_at")
        if self.status is SessionStatus.OPEN and self.ended_at is not None:
            raise ValueError("open sessions carry no ended_at")
        stamps = [m.timestamp for m in self.messages]
        if any(a > b for a, b in zip(stamps, stamps[1:])):
            raise ValueError("message timestamps must be non-decreasing")
        assistant_count = sum(1 for m in self.messages if m.author is Author.ASSISTANT)
        if len(self.stage_trace) != assistant_count:
            raise ValueError("stage trace requires exactly one entry per assistant message")
        versions = [e.version for e in self.summary_versions]
        if versions != list(range(len(versions))):
            raise ValueError("summary versions must be dense from 0")
        if self.summary_versions and self.summary_versions[0].author is not Author.ASSISTANT:
            raise ValueError("summary version 0 is assistant-generated")

    @property
    def turn_count(self) -> int:
        """Completed patient turns: one per patient-authored message."""
        return sum(1 for m in self.messages if m.author is Author.PATIENT)

    @property
    def current_stage(self) -> Optional[Stage]:
        return self.stage_trace[-1][1] if self.stage_trace else None

    @property
    def latest_summary(self) -> Optional[JournalEntry]:
        return self.summary_versions[-1] if self.summary_versions else None

    def with_message(self, message: Message) -> "Session":
        return replace(self, messages=self.messages + (message,))


@dataclass(frozen=True)
class AlertEvent:
    alert_id: str
    kind: AlertKind
    participant_id: str
    created_at: datetime
    payload: dict[str, Any] = field(default_factory=dict)
    session_id: Optional[str] = None
    delivery_status: DeliveryStatus = DeliveryStatus()
    acknowledged_at: Optional[datetime] = None
    acknowledged_by: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind is AlertKind.SENSITIVE_TURN:
            if self.session_id is None:
                raise ValueError("sensitive-turn alerts reference a session")
            if not self.payload.get("triggers"):
                raise ValueError("sensitive-turn alerts list at least one trigger")
