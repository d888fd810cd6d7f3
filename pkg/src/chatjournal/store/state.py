"""Materialized snapshot views over the event log.

The view folds events into cheap mutable builders and materializes the
frozen, invariant-checked domain values on read. Replaying events
1..last_applied_event_id from empty reproduces the view exactly; the
rebuild test holds the store to that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime
from typing import Any, Iterable, Optional

from ..core.serialize import (
    alert_from_json,
    assessment_from_json,
    message_from_json,
    participant_from_json,
    ts_from_json,
)
from ..core.stages import Stage, parse_stage_label
from ..core.types import (
    AlertEvent,
    Assessment,
    Author,
    DeliveryState,
    DeliveryStatus,
    JournalEntry,
    Message,
    ParticipantProfile,
    ParticipantStatus,
    Session,
    SessionMode,
    SessionStatus,
)
from .events import DomainEvent


@dataclass
class _SessionBuilder:
    session_id: str
    participant_id: str
    assessment_id: str
    started_at: datetime
    mode: SessionMode
    config_hash: str
    status: SessionStatus = SessionStatus.OPEN
    ended_at: Optional[datetime] = None
    reflection: Optional[str] = None
    messages: list[Message] = field(default_factory=list)
    stage_trace: list[tuple[int, Optional[Stage]]] = field(default_factory=list)
    summaries: list[JournalEntry] = field(default_factory=list)
    _cache: Optional[Session] = None

    def dirty(self) -> None:
        self._cache = None

    def build(self) -> Session:
        if self._cache is None:
            self._cache = Session(
                session_id=self.session_id,
                participant_id=self.participant_id,
                assessment_id=self.assessment_id,
                started_at=self.started_at,
                ended_at=self.ended_at,
                mode=self.mode,
                status=self.status,
                messages=tuple(self.messages),
                stage_trace=tuple(self.stage_trace),
                summary_versions=tuple(self.summaries),
                reflection=self.reflection,
                config_hash=self.config_hash,
            )
        return self._cache


class StateView:
    """Current state per aggregate, derived purely from the log."""

    def __init__(self) -> None:
        self.last_applied_event_id = 0
        self._participants: dict[str, ParticipantProfile] = {}
        self._assessments: dict[str, Assessment] = {}
        self._assessments_by_participant: dict[str, list[str]] = {}
        self._sessions: dict[str, _SessionBuilder] = {}
        self._sessions_by_participant: dict[str, list[str]] = {}
        self._alerts: dict[str, AlertEvent] = {}
        self._alert_order: list[str] = []
        self._interaction_days: dict[str, set[date]] = {}
        self._turn_audits: dict[str, dict[int, dict[str, Any]]] = {}

    # -- folding ---------------------------------------------------------
    def apply_events(self, events: Iterable[DomainEvent]) -> None:
        for e in events:
            self.apply(e)

    def apply(self, e: DomainEvent) -> None:
        if e.event_id != self.last_applied_event_id + 1:
            raise ValueError(
                f"event {e.event_id} applied out of order (expected {self.last_applied_event_id + 1})"
            )
        handler = getattr(self, f"_on_{e.kind}", None)
        if handler is not None:
            handler(e.payload)
        self.last_applied_event_id = e.event_id

    def _builder(self, session_id: str) -> _SessionBuilder:
        b = self._sessions[session_id]
        b.dirty()
        return b

    def _on_participant_registered(self, p: dict[str, Any]) -> None:
        profile = participant_from_json(p["participant"])
        self._participants[profile.participant_id] = profile

    def _on_assessment_submitted(self, p: dict[str, Any]) -> None:
        a = assessment_from_json(p["assessment"])
        self._assessments[a.assessment_id] = a
        self._assessments_by_participant.setdefault(a.participant_id, []).append(a.assessment_id)

    def _on_session_started(self, p: dict[str, Any]) -> None:
        b = _SessionBuilder(
            session_id=p["session_id"],
            participant_id=p["participant_id"],
            assessment_id=p["assessment_id"],
            started_at=ts_from_json(p["started_at"]),
            mode=SessionMode(p["mode"]),
            config_hash=p.get("config_hash", ""),
        )
        self._sessions[b.session_id] = b
        self._sessions_by_participant.setdefault(b.participant_id, []).append(b.session_id)

    def _on_message_appended(self, p: dict[str, Any]) -> None:
        m = message_from_json(p["message"])
        self._builder(m.session_id).messages.append(m)

    def _on_stage_recorded(self, p: dict[str, Any]) -> None:
        b = self._builder(p["session_id"])
        b.stage_trace.append((p["turn_index"], parse_stage_label(p["stage"])))

    def _on_turn_audited(self, p: dict[str, Any]) -> None:
        self._turn_audits.setdefault(p["session_id"], {})[p["turn_index"]] = p

    def _on_summary_version_added(self, p: dict[str, Any]) -> None:
        b = self._builder(p["session_id"])
        entry = p["entry"]
        b.summaries.append(
            JournalEntry(
                version=entry["version"],
                text=entry["text"],
                author=Author(entry["author"]),
                created_at=ts_from_json(entry["created_at"]),
            )
        )

    def _on_session_closed(self, p: dict[str, Any]) -> None:
        b = self._builder(p["session_id"])
        b.status = SessionStatus.CLOSED
        b.ended_at = ts_from_json(p["ended_at"])
        b.reflection = p.get("reflection")

    def _on_session_halted(self, p: dict[str, Any]) -> None:
        b = self._builder(p["session_id"])
        b.status = SessionStatus.HALTED
        b.ended_at = ts_from_json(p["at"])

    def _on_alert_raised(self, p: dict[str, Any]) -> None:
        a = alert_from_json(p["alert"])
        self._alerts[a.alert_id] = a
        self._alert_order.append(a.alert_id)

    def _on_alert_delivery_changed(self, p: dict[str, Any]) -> None:
        a = self._alerts[p["alert_id"]]
        status = DeliveryStatus(state=DeliveryState(p["state"]), reason=p.get("reason"))
        self._alerts[a.alert_id] = AlertEvent(
            alert_id=a.alert_id,
            kind=a.kind,
            participant_id=a.participant_id,
            session_id=a.session_id,
            created_at=a.created_at,
            payload=a.payload,
            delivery_status=status,
            acknowledged_at=a.acknowledged_at,
            acknowledged_by=a.acknowledged_by,
        )

    def _on_alert_acknowledged(self, p: dict[str, Any]) -> None:
        a = self._alerts[p["alert_id"]]
        self._alerts[a.alert_id] = AlertEvent(
            alert_id=a.alert_id,
            kind=a.kind,
            participant_id=a.participant_id,
            session_id=a.session_id,
            created_at=a.created_at,
            payload=a.payload,
            delivery_status=a.delivery_status,
            acknowledged_at=ts_from_json(p["at"]),
            acknowledged_by=p["by"],
        )

    def _set_participant_status(
        self, participant_id: str, status: ParticipantStatus, until: Optional[datetime]
    ) -> None:
        p = self._participants[participant_id]
        self._participants[participant_id] = ParticipantProfile(
            participant_id=p.participant_id,
            alias=p.alias,
            age=p.age,
            gender=p.gender,
            severity_band=p.severity_band,
            enrollment_date=p.enrollment_date,
            timezone=p.timezone,
            status=status,
            suspended_until=until,
            cesdc_score=p.cesdc_score,
        )

    def _on_participant_suspended(self, p: dict[str, Any]) -> None:
        self._set_participant_status(
            p["participant_id"], ParticipantStatus.SUSPENDED, ts_from_json(p["until"])
        )

    def _on_participant_resumed(self, p: dict[str, Any]) -> None:
        self._set_participant_status(p["participant_id"], ParticipantStatus.ACTIVE, None)

    def _on_participant_dropped(self, p: dict[str, Any]) -> None:
        self._set_participant_status(p["participant_id"], ParticipantStatus.DROPPED, None)

    def _on_interaction_day_recorded(self, p: dict[str, Any]) -> None:
        self._interaction_days.setdefault(p["participant_id"], set()).add(
            date.fromisoformat(p["local_date"])
        )

    # -- accessors ---------------------------------------------------------
    def participant(self, participant_id: str) -> Optional[ParticipantProfile]:
        return self._participants.get(participant_id)

    def participants(self) -> list[ParticipantProfile]:
        return list(self._participants.values())

    def assessment(self, assessment_id: str) -> Optional[Assessment]:
        return self._assessments.get(assessment_id)

    def assessments_for(self, participant_id: str) -> list[Assessment]:
        ids = self._assessments_by_participant.get(participant_id, [])
        return [self._assessments[i] for i in ids]

    def session(self, session_id: str) -> Optional[Session]:
        b = self._sessions.get(session_id)
        return b.build() if b else None

    def sessions_for(self, participant_id: str) -> list[Session]:
        ids = self._sessions_by_participant.get(participant_id, [])
        return [self._sessions[i].build() for i in ids]

    def all_sessions(self) -> list[Session]:
        return [b.build() for b in self._sessions.values()]

    def alert(self, alert_id: str) -> Optional[AlertEvent]:
        return self._alerts.get(alert_id)

    def alerts(self) -> list[AlertEvent]:
        return [self._alerts[i] for i in self._alert_order]

    def interaction_days(self, participant_id: str) -> frozenset[date]:
        return frozenset(self._interaction_days.get(participant_id, set()))

    def turn_audits(self, session_id: str) -> dict[int, dict[str, Any]]:
        return dict(self._turn_audits.get(session_id, {}))

    def snapshot_digest(self) -> dict[str, Any]:
        """Comparable summary used by the rebuild-equivalence check."""
        return {
            "last_applied_event_id": self.last_applied_event_id,
            "participants": {k: v for k, v in sorted(self._participants.items())},
            "assessments": {k: v for k, v in sorted(self._assessments.items())},
            "sessions": {k: self._sessions[k].build() for k in sorted(self._sessions)},
            "alerts": {k: v for k, v in sorted(self._alerts.items())},
            "interaction_days": {k: frozenset(v) for k, v in sorted(self._interaction_days.items())},
        }


def rebuild(events: Iterable[DomainEvent]) -> StateView:
    """Pure fold of the full log from empty."""
    view = StateView()
    view.apply_events(events)
    return view
