"""Participant archive export and import.

Archives are a directory holding a manifest and one JSON-lines file of
the participant's events, one event per line, UTF-8, in log order.
Redaction applies a caller-supplied text scrubber to every free-text
field so archives can leave the deployment boundary.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Iterable

from ..core.serialize import canonical_dumps
from . import events as ev
from .events import DomainEvent
from .log import EventLog

MANIFEST_NAME = "manifest.json"
EVENTS_NAME = "events.jsonl"

_TEXT_FIELDS = {
    ev.MESSAGE_APPENDED: [("message", "text")],
    ev.SUMMARY_VERSION_ADDED: [("entry", "text")],
    ev.ASSESSMENT_SUBMITTED: [("assessment", "open_answer")],
    ev.SESSION_CLOSED: [("reflection",)],
}


def _participant_of(event: DomainEvent) -> str | None:
    p = event.payload
    for probe in (
        p.get("participant_id"),
        p.get("participant", {}).get("participant_id") if isinstance(p.get("participant"), dict) else None,
        p.get("assessment", {}).get("participant_id") if isinstance(p.get("assessment"), dict) else None,
        p.get("alert", {}).get("participant_id") if isinstance(p.get("alert"), dict) else None,
    ):
        if probe:
            return probe
    return None


def events_for_participant(log: EventLog, participant_id: str) -> Iterable[DomainEvent]:
    """All events belonging to one participant, including session-scoped ones."""
    session_ids: set[str] = set()
    for event in log.replay():
        owner = _participant_of(event)
        sid = event.payload.get("session_id") or (
            event.payload.get("message", {}).get("session_id")
            if isinstance(event.payload.get("message"), dict)
            else None
        )
        if owner == participant_id:
            if sid:
                session_ids.add(sid)
            yield event
        elif sid and sid in session_ids:
            yield event


def _redact_payload(event: DomainEvent, redactor: Callable[[str], str]) -> DomainEvent:
    paths = _TEXT_FIELDS.get(event.kind)
    if not paths:
        return event
    payload = json.loads(canonical_dumps(event.payload))
    for path in paths:
        node = payload
        for key in path[:-1]:
            node = node.get(key) or {}
        leaf = path[-1]
        if isinstance(node, dict) and isinstance(node.get(leaf), str):
            node[leaf] = redactor(node[leaf])
    return DomainEvent(event.event_id, event.kind, event.occurred_at, event.actor, payload)


def export_participant(
    log: EventLog,
    participant_id: str,
    target: str | Path,
    redactor: Callable[[str], str] | None = None,
) -> Path:
    """Write the participant's archive; returns the archive directory."""
    target = Path(target)
    target.mkdir(parents=True, exist_ok=True)
    count = 0
    with (target / EVENTS_NAME).open("w", encoding="utf-8") as fh:
        for event in events_for_participant(log, participant_id):
            if redactor is not None:
                event = _redact_payload(event, redactor)
            fh.write(event.to_line() + "\n")
            count += 1
    manifest = {
        "format": "chatjournal-archive",
        "version": 1,
        "participant_id": participant_id,
        "event_count": count,
        "redacted": redactor is not None,
        "files": [EVENTS_NAME],
    }
    (target / MANIFEST_NAME).write_text(canonical_dumps(manifest) + "\n", encoding="utf-8")
    return target


def import_archive(source: str | Path) -> list[DomainEvent]:
    """Read an archive back into events, in original order, ids preserved."""
    source = Path(source)
    manifest = json.loads((source / MANIFEST_NAME).read_text(encoding="utf-8"))
    if manifest.get("format") != "chatjournal-archive":
        raise ValueError("not a chatjournal archive")
    events = []
    with (source / EVENTS_NAME).open(encoding="utf-8") as fh:
        for line in fh:
            events.append(DomainEvent.from_json(json.loads(line)))
    return events
