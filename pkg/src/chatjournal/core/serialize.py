"""Canonical JSON serialization for every domain type.

The JSON shapes defined here are the wire and storage format: persistence
exports, the HTTP API, and the event log all use them. Field names are
stable; timestamps are UTC ISO-8601 strings; stage fields serialize the
unfilled slot as ``"NotSelected"``.
"""

from __future__ import annotations

import json
from datetime import date, datetime, timezone
from typing import Any

from .scoring import SeverityBand
from .stages import parse_stage_label, stage_label
from .types import (
    AlertEvent,
    AlertKind,
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


def canonical_dumps(obj: Any) -> str:
    """Deterministic JSON encoding: sorted keys, tight separators, raw unicode."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def ts_to_json(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat()


def ts_from_json(raw: str) -> datetime:
    return datetime.fromisoformat(raw).astimezone(timezone.utc)


def participant_to_json(p: ParticipantProfile) -> dict[str, Any]:
    return {
        "participant_id": p.participant_id,
        "alias": p.alias,
        "age": p.age,
        "gender": p.gender,
        "severity_band": p.severity_band.value,
        "enrollment_date": p.enrollment_date.isoformat(),
        "timezone": p.timezone,
        "status": p.status.value,
        "suspended_until": ts_to_json(p.suspended_until) if p.suspended_until else None,
        "cesdc_score": p.cesdc_score,
    }


def participant_from_json(d: dict[str, Any]) -> ParticipantProfile:
    return ParticipantProfile(
        participant_id=d["participant_id"],
        alias=d["alias"],
        age=d["age"],
        gender=d["gender"],
        severity_band=SeverityBand(d["severity_band"]),
        enrollment_date=date.fromisoformat(d["enrollment_date"]),
        timezone=d["timezone"],
        status=ParticipantStatus(d["status"]),
        suspended_until=ts_from_json(d["suspended_until"]) if d.get("suspended_until") else None,
        cesdc_score=d.get("cesdc_score"),
    )


def message_to_json(m: Message) -> dict[str, Any]:
    return {
        "message_id": m.message_id,
        "session_id": m.session_id,
        "author": m.author.value,
        "text": m.text,
        "timestamp": ts_to_json(m.timestamp),
        "stage_at_emission": stage_label(m.stage_at_emission),
        "length_units": m.length_units,
    }


def message_from_json(d: dict[str, Any]) -> Message:
    return Message(
        message_id=d["message_id"],
        session_id=d["session_id"],
        author=Author(d["author"]),
        text=d["text"],
        timestamp=ts_from_json(d["timestamp"]),
        stage_at_emission=parse_stage_label(d["stage_at_emission"]),
        length_units=d["length_units"],
    )


def assessment_to_json(a: Assessment) -> dict[str, Any]:
    return {
        "assessment_id": a.assessment_id,
        "participant_id": a.participant_id,
        "items": list(a.items),
        "open_answer": a.open_answer,
        "total": a.total,
        "gate_tripped": a.gate_tripped,
        "created_at": ts_to_json(a.created_at),
    }


def assessment_from_json(d: dict[str, Any]) -> Assessment:
    return Assessment(
        assessment_id=d["assessment_id"],
        participant_id=d["participant_id"],
        items=tuple(d["items"]),
        open_answer=d["open_answer"],
        total=d["total"],
        gate_tripped=d["gate_tripped"],
        created_at=ts_from_json(d["created_at"]),
    )


def journal_entry_to_json(e: JournalEntry) -> dict[str, Any]:
    return {
        "version": e.version,
        "text": e.text,
        "author": e.author.value,
        "created_at": ts_to_json(e.created_at),
    }


def journal_entry_from_json(d: dict[str, Any]) -> JournalEntry:
    return JournalEntry(
        version=d["version"],
        text=d["text"],
        author=Author(d["author"]),
        created_at=ts_from_json(d["created_at"]),
    )


def session_to_json(s: Session) -> dict[str, Any]:
    return {
        "session_id": s.session_id,
        "participant_id": s.participant_id,
        "assessment_id": s.assessment_id,
        "started_at": ts_to_json(s.started_at),
        "ended_at": ts_to_json(s.ended_at) if s.ended_at else None,
        "mode": s.mode.value,
        "status": s.status.value,
        "messages": [message_to_json(m) for m in s.messages],
        "stage_trace": [[turn, stage_label(stage)] for turn, stage in s.stage_trace],
        "summary_versions": [journal_entry_to_json(e) for e in s.summary_versions],
        "reflection": s.reflection,
        "config_hash": s.config_hash,
    }


def session_from_json(d: dict[str, Any]) -> Session:
    return Session(
        session_id=d["session_id"],
        participant_id=d["participant_id"],
        assessment_id=d["assessment_id"],
        started_at=ts_from_json(d["started_at"]),
        ended_at=ts_from_json(d["ended_at"]) if d.get("ended_at") else None,
        mode=SessionMode(d["mode"]),
        status=SessionStatus(d["status"]),
        messages=tuple(message_from_json(m) for m in d["messages"]),
        stage_trace=tuple((turn, parse_stage_label(label)) for turn, label in d["stage_trace"]),
        summary_versions=tuple(journal_entry_from_json(e) for e in d["summary_versions"]),
        reflection=d.get("reflection"),
        config_hash=d.get("config_hash", ""),
    )


def alert_to_json(a: AlertEvent) -> dict[str, Any]:
    return {
        "alert_id": a.alert_id,
        "kind": a.kind.value,
        "participant_id": a.participant_id,
        "session_id": a.session_id,
        "created_at": ts_to_json(a.created_at),
        "payload": a.payload,
        "delivery_status": {
            "state": a.delivery_status.state.value,
            "reason": a.delivery_status.reason,
        },
        "acknowledged_at": ts_to_json(a.acknowledged_at) if a.acknowledged_at else None,
        "acknowledged_by": a.acknowledged_by,
    }


def alert_from_json(d: dict[str, Any]) -> AlertEvent:
    return AlertEvent(
        alert_id=d["alert_id"],
        kind=AlertKind(d["kind"]),
        participant_id=d["participant_id"],
        session_id=d.get("session_id"),
        created_at=ts_from_json(d["created_at"]),
        payload=d.get("payload", {}),
        delivery_status=DeliveryStatus(
            state=DeliveryState(d["delivery_status"]["state"]),
            reason=d["delivery_status"].get("reason"),
        ),
        acknowledged_at=ts_from_json(d["acknowledged_at"]) if d.get("acknowledged_at") else None,
        acknowledged_by=d.get("acknowledged_by"),
    )
