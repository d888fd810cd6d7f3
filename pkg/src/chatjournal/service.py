"""Application service: the one place state changes happen.

Every write path reads current state, plans a batch of domain events,
and commits the batch atomically with an optimistic head check. Turns on
one session are serialized by a per-session lock (waiting or rejecting,
configurable); different sessions proceed in parallel, with a short
global critical section around the actual commit.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import date, datetime, time, timedelta, timezone
from typing import Iterator, Optional
from zoneinfo import ZoneInfo

from .clock import Clock, SystemClock, ensure_utc
from .core.affirmative import AffirmativeRules
from .core.scoring import classify_cesdc
from .core.serialize import (
    alert_to_json,
    assessment_to_json,
    journal_entry_to_json,
    participant_to_json,
    ts_to_json,
)
from .core.stages import Stage
from .core.types import (
    AlertEvent,
    AlertKind,
    Assessment,
    Author,
    JournalEntry,
    Message,
    ParticipantProfile,
    ParticipantStatus,
    Session,
    SessionMode,
    SessionStatus,
)
from .engine.pipeline import plan_close, plan_turn
from .engine.prompts import PromptRegistry, default_registry
from .errors import (
    Busy,
    CalmingModeActive,
    GateRequired,
    NotFound,
    ParticipantSuspended,
    SessionClosed,
)
from .gateway import AuditRecord, Gateway
from .ids import IdFactory, SequentialIds
from .safety.adherence import AdherenceRecord, AdherenceSignal, check_adherence
from .safety.gate import GateVerdict, evaluate_gate
from .safety.lexicon import DEFAULT_LEXICON, SensitiveLexicon
from .safety.review import review_queue
from .safety.suspension import FlaggedSession, SuspensionPolicy, apply_suspension_policy
from .store import events as ev
from .store.events import DomainEvent, event
from .store.export import export_participant
from .store.log import EventLog, MemoryEventLog
from .store.state import StateView


@dataclass(frozen=True)
class TurnResult:
    assistant_message: Message
    session: Session
    summary: Optional[JournalEntry]
    stage: Stage
    suspended: bool


class JournalService:
    def __init__(
        self,
        log: EventLog | None = None,
        gateway: Gateway | None = None,
        registry: PromptRegistry | None = None,
        lexicon: SensitiveLexicon = DEFAULT_LEXICON,
        policy: SuspensionPolicy = SuspensionPolicy(),
        affirmative_rules: AffirmativeRules | None = None,
        clock: Clock | None = None,
        ids: IdFactory | None = None,
        busy_policy: str = "wait",
    ) -> None:
        if busy_policy not in ("wait", "reject"):
            raise ValueError("busy_policy is 'wait' or 'reject'")
        self.log = log if log is not None else MemoryEventLog()
        self.registry = registry or default_registry()
        self.lexicon = lexicon
        self.policy = policy
        self.affirmative_rules = affirmative_rules or AffirmativeRules()
        self.clock = clock or SystemClock()
        self.ids = ids or SequentialIds()
        self.busy_policy = busy_policy
        self.gateway = gateway
        if self.gateway is not None:
            self.gateway.config_hash = self.registry.config_hash
            self.gateway.set_audit_sink(self._audit_provider_call)
        self.state = StateView()
        self.state.apply_events(self.log.replay())
        self._write_lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # ------------------------------------------------------------------
    def _now(self) -> datetime:
        return ensure_utc(self.clock.now())

    def _require_gateway(self) -> Gateway:
        if self.gateway is None:
            raise NotFound("no text-generation gateway configured")
        return self.gateway

    def _commit(self, events: list[DomainEvent]) -> None:
        if not events:
            return
        with self._write_lock:
            head = self.log.head
            self.log.append(events, expected_head=head)
            self.state.apply_events(self.log.replay(head + 1))

    def _audit_provider_call(self, record: AuditRecord) -> None:
        payload = {
            "purpose": record.purpose,
            "segments": [{"role": s.role, "text": s.text} for s in record.segments],
            "params": record.params.to_json(),
            "response_text": record.response_text,
            "usage": record.usage,
            "config_hash": record.config_hash,
        }
        self._commit([event(ev.PROVIDER_CALL_LOGGED, self._now(), "System", {"call": payload})])

    def _session_lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def _acquire(self, session_id: str) -> threading.Lock:
        lock = self._session_lock(session_id)
        if self.busy_policy == "wait":
            lock.acquire()
        elif not lock.acquire(blocking=False):
            raise Busy(f"session {session_id} has a turn in flight")
        return lock

    # -- lookups ---------------------------------------------------------
    def participant(self, participant_id: str) -> ParticipantProfile:
        p = self.state.participant(participant_id)
        if p is None:
            raise NotFound(f"unknown participant {participant_id}")
        return p

    def session(self, session_id: str) -> Session:
        s = self.state.session(session_id)
        if s is None:
            raise NotFound(f"unknown session {session_id}")
        return s

    def local_date(self, participant: ParticipantProfile, instant: datetime | None = None) -> date:
        instant = instant or self._now()
        return instant.astimezone(ZoneInfo(participant.timezone)).date()

    # -- participants ------------------------------------------------------
    def register_participant(
        self,
        alias: str,
        age: int,
        gender: str,
        cesdc_score: int,
        timezone_name: str = "UTC",
        enrollment_date: date | None = None,
        participant_id: str | None = None,
    ) -> ParticipantProfile:
        now = self._now()
        profile = ParticipantProfile(
            participant_id=participant_id or self.ids.new_id("p"),
            alias=alias,
            age=age,
            gender=gender,
            severity_band=classify_cesdc(cesdc_score),
            enrollment_date=enrollment_date or now.date(),
            timezone=timezone_name,
            cesdc_score=cesdc_score,
        )
        self._commit(
            [event(ev.PARTICIPANT_REGISTERED, now, "System", {"participant": participant_to_json(profile)})]
        )
        return profile

    # -- assessment & gate --------------------------------------------------
    def submit_assessment(
        self, participant_id: str, items: list[int], open_answer: str
    ) -> tuple[Assessment, GateVerdict]:
        profile = self.participant(participant_id)
        now = self._now()
        if profile.is_suspended(now):
            raise ParticipantSuspended(participant_id)
        assessment = Assessment.build(
            self.ids.new_id("assess"), participant_id, items, open_answer, now, self.affirmative_rules
        )
        verdict = evaluate_gate(assessment)
        batch = [event(ev.ASSESSMENT_SUBMITTED, now, "Patient", {"assessment": assessment_to_json(assessment)})]
        if verdict is GateVerdict.CALMING_CONTENT:
            alert = AlertEvent(
                alert_id=self.ids.new_id("alert"),
                kind=AlertKind.GATE_TRIP,
                participant_id=participant_id,
                created_at=now,
                payload={"assessment": assessment_to_json(assessment)},
            )
            batch.append(event(ev.ALERT_RAISED, now, "System", {"alert": alert_to_json(alert)}))
        batch += self._interaction_day_events(profile, now)
        self._commit(batch)
        return assessment, verdict

    def same_day_assessment(self, participant_id: str, now: datetime | None = None) -> Optional[Assessment]:
        profile = self.participant(participant_id)
        today = self.local_date(profile, now)
        todays = [
            a for a in self.state.assessments_for(participant_id) if self.local_date(profile, a.created_at) == today
        ]
        return todays[-1] if todays else None

    def _interaction_day_events(self, profile: ParticipantProfile, now: datetime) -> list[DomainEvent]:
        day = self.local_date(profile, now)
        if day in self.state.interaction_days(profile.participant_id):
            return []
        return [
            event(
                ev.INTERACTION_DAY_RECORDED,
                now,
                "System",
                {"participant_id": profile.participant_id, "local_date": day.isoformat()},
            )
        ]

    # -- sessions -------------------------------------------------------------
    def create_session(self, participant_id: str) -> Session:
        profile = self.participant(participant_id)
        now = self._now()
        if profile.is_suspended(now):
            raise ParticipantSuspended(participant_id)
        assessment = self.same_day_assessment(participant_id, now)
        if assessment is None:
            raise GateRequired(f"participant {participant_id} has no assessment today")
        mode = SessionMode.CALMING_CONTENT if assessment.gate_tripped else SessionMode.STANDARD
        session_id = self.ids.new_id("sess")
        batch = [
            event(
                ev.SESSION_STARTED,
                now,
                "Patient",
                {
                    "session_id": session_id,
                    "participant_id": participant_id,
                    "assessment_id": assessment.assessment_id,
                    "started_at": ts_to_json(now),
                    "mode": mode.value,
                    "config_hash": self.registry.config_hash,
                },
            )
        ]
        batch += self._interaction_day_events(profile, now)
        self._commit(batch)
        return self.session(session_id)

    def _previous_summary(self, session_id: str) -> str:
        audits = self.state.turn_audits(session_id)
        if not audits:
            return ""
        return audits[max(audits)]["analyzer"]["summary"]

    def _sensitive_history(self, participant_id: str) -> list[FlaggedSession]:
        return [
            FlaggedSession(session_id=a.session_id, flagged_at=a.created_at)
            for a in self.state.alerts()
            if a.kind is AlertKind.SENSITIVE_TURN and a.participant_id == participant_id and a.session_id
        ]

    def post_patient_message(self, session_id: str, text: str) -> TurnResult:
        lock = self._acquire(session_id)
        try:
            session = self.session(session_id)
            profile = self.participant(session.participant_id)
            now = self._now()
            if session.status is not SessionStatus.OPEN:
                raise SessionClosed(session_id)
            if session.mode is not SessionMode.STANDARD:
                raise CalmingModeActive(session_id)
            if profile.is_suspended(now):
                raise ParticipantSuspended(session.participant_id)

            plan = plan_turn(
                session=session,
                patient_text=text,
                now=now,
                previous_summary=self._previous_summary(session_id),
                registry=self.registry,
                lexicon=self.lexicon,
                gateway=self._require_gateway(),
                ids=self.ids,
            )
            batch = list(plan.events)
            batch += self._interaction_day_events(profile, now)

            suspended = False
            if plan.next_stage is Stage.SENSITIVE_TOPIC:
                history = self._sensitive_history(session.participant_id)
                history.append(FlaggedSession(session_id=session_id, flagged_at=now))
                until = apply_suspension_policy(profile, history, self.policy, now)
                if until is not None:
                    suspended = True
                    batch += self._suspension_events(profile, until, now, reason="sensitive-topic frequency")
                    batch.append(
                        event(
                            ev.SESSION_HALTED,
                            now,
                            "System",
                            {"session_id": session_id, "at": ts_to_json(now), "reason": "participant suspended"},
                        )
                    )
            self._commit(batch)
            return TurnResult(
                assistant_message=plan.assistant_message,
                session=self.session(session_id),
                summary=plan.summary_entry,
                stage=plan.next_stage,
                suspended=suspended,
            )
        finally:
            lock.release()

    def edit_summary(self, session_id: str, text: str) -> JournalEntry:
        lock = self._acquire(session_id)
        try:
            session = self.session(session_id)
            if session.status is SessionStatus.HALTED:
                raise SessionClosed(session_id)
            if not session.summary_versions:
                raise NotFound("no generated summary to edit yet")
            now = self._now()
            entry = JournalEntry(
                version=len(session.summary_versions),
                text=text,
                author=Author.PATIENT,
                created_at=now,
            )
            self._commit(
                [
                    event(
                        ev.SUMMARY_VERSION_ADDED,
                        now,
                        "Patient",
                        {"session_id": session_id, "entry": journal_entry_to_json(entry)},
                    )
                ]
            )
            return entry
        finally:
            lock.release()

    def close_session(self, session_id: str, reflection: Optional[str] = None) -> Session:
        lock = self._acquire(session_id)
        try:
            session = self.session(session_id)
            plan = plan_close(session, reflection, self._now(), self.ids)
            self._commit(plan.events)
            return self.session(session_id)
        finally:
            lock.release()

    # -- safety console ---------------------------------------------------------
    def _suspension_events(
        self, profile: ParticipantProfile, until: datetime, now: datetime, reason: str
    ) -> list[DomainEvent]:
        alert = AlertEvent(
            alert_id=self.ids.new_id("alert"),
            kind=AlertKind.SUSPENSION_STARTED,
            participant_id=profile.participant_id,
            created_at=now,
            payload={"until": ts_to_json(until), "reason": reason},
        )
        return [
            event(
                ev.PARTICIPANT_SUSPENDED,
                now,
                "System",
                {
                    "participant_id": profile.participant_id,
                    "until": ts_to_json(until),
                    "reason": reason,
                    "at": ts_to_json(now),
                },
            ),
            event(ev.ALERT_RAISED, now, "System", {"alert": alert_to_json(alert)}),
        ]

    def suspend_participant(self, participant_id: str, by: str, days: int | None = None) -> ParticipantProfile:
        profile = self.participant(participant_id)
        now = self._now()
        until = now + timedelta(days=days if days is not None else self.policy.suspension_days)
        batch = self._suspension_events(profile, until, now, reason=f"clinician {by}")
        for session in self.state.sessions_for(participant_id):
            if session.status is SessionStatus.OPEN:
                batch.append(
                    event(
                        ev.SESSION_HALTED,
                        now,
                        f"Clinician:{by}",
                        {"session_id": session.session_id, "at": ts_to_json(now), "reason": "participant suspended"},
                    )
                )
        self._commit(batch)
        return self.participant(participant_id)

    def resume_participant(self, participant_id: str, by: str) -> ParticipantProfile:
        self.participant(participant_id)  # existence check
        now = self._now()
        self._commit(
            [
                event(
                    ev.PARTICIPANT_RESUMED,
                    now,
                    f"Clinician:{by}",
                    {"participant_id": participant_id, "by": by, "at": ts_to_json(now)},
                )
            ]
        )
        return self.participant(participant_id)

    def drop_participant(self, participant_id: str, by: str, reason: str = "") -> ParticipantProfile:
        self.participant(participant_id)
        now = self._now()
        self._commit(
            [
                event(
                    ev.PARTICIPANT_DROPPED,
                    now,
                    f"Clinician:{by}",
                    {"participant_id": participant_id, "reason": reason, "at": ts_to_json(now)},
                )
            ]
        )
        return self.participant(participant_id)

    def acknowledge_alert(self, alert_id: str, by: str) -> AlertEvent:
        if self.state.alert(alert_id) is None:
            raise NotFound(f"unknown alert {alert_id}")
        now = self._now()
        self._commit(
            [
                event(
                    ev.ALERT_ACKNOWLEDGED,
                    now,
                    f"Clinician:{by}",
                    {"alert_id": alert_id, "by": by, "at": ts_to_json(now)},
                )
            ]
        )
        return self.state.alert(alert_id)

    def set_alert_delivery(self, alert_id: str, state: str, reason: Optional[str] = None) -> AlertEvent:
        if self.state.alert(alert_id) is None:
            raise NotFound(f"unknown alert {alert_id}")
        now = self._now()
        self._commit(
            [
                event(
                    ev.ALERT_DELIVERY_CHANGED,
                    now,
                    "System",
                    {"alert_id": alert_id, "state": state, "reason": reason, "at": ts_to_json(now)},
                )
            ]
        )
        return self.state.alert(alert_id)

    # -- adherence ----------------------------------------------------------------
    def adherence_record(self, participant_id: str) -> AdherenceRecord:
        profile = self.participant(participant_id)
        return AdherenceRecord(
            participant_id=participant_id,
            enrollment_date=profile.enrollment_date,
            interaction_days=self.state.interaction_days(participant_id),
        )

    def run_adherence_check(self, participant_id: str, today: date | None = None) -> AdherenceSignal:
        profile = self.participant(participant_id)
        if profile.status is ParticipantStatus.DROPPED:
            return AdherenceSignal.NONE
        today = today or self.local_date(profile)
        signal = check_adherence(self.adherence_record(participant_id), today)
        if signal is AdherenceSignal.NONE:
            return signal
        kind = AlertKind.REMINDER_DUE if signal is AdherenceSignal.REMINDER_DUE else AlertKind.DROPOUT_FLAG
        already = any(
            a.kind is kind
            and a.participant_id == participant_id
            and a.payload.get("local_date") == today.isoformat()
            for a in self.state.alerts()
        )
        if not already:
            now = self._now()
            alert = AlertEvent(
                alert_id=self.ids.new_id("alert"),
                kind=kind,
                participant_id=participant_id,
                created_at=now,
                payload={
                    "local_date": today.isoformat(),
                    "consecutive_missed": self.adherence_record(participant_id).consecutive_missed(today),
                },
            )
            self._commit([event(ev.ALERT_RAISED, now, "System", {"alert": alert_to_json(alert)})])
        return signal

    # -- review & reporting -----------------------------------------------------------
    def review_queue(self, now: datetime | None = None) -> list[Session]:
        return review_queue(self.state.all_sessions(), self.state.alerts(), now or self._now())

    def pending_alerts(self) -> list[AlertEvent]:
        return [a for a in self.state.alerts() if a.acknowledged_at is None]

    def journal_cards(self, participant_id: str) -> list[dict]:
        self.participant(participant_id)
        cards = []
        for s in self.state.sessions_for(participant_id):
            assessment = self.state.assessment(s.assessment_id)
            duration = (s.ended_at - s.started_at).total_seconds() if s.ended_at else None
            latest = s.latest_summary
            cards.append(
                {
                    "session_id": s.session_id,
                    "started_at": ts_to_json(s.started_at),
                    "ended_at": ts_to_json(s.ended_at) if s.ended_at else None,
                    "duration_s": duration,
                    "status": s.status.value,
                    "mode": s.mode.value,
                    "phq9_total": assessment.total if assessment else None,
                    "message_count": len(s.messages),
                    "summary_text": latest.text if latest else None,
                    "summary_version_count": len(s.summary_versions),
                    "reflection": s.reflection,
                }
            )
        cards.sort(key=lambda c: c["started_at"])
        return cards

    def export(self, participant_id: str, target, redactor=None):
        self.participant(participant_id)
        return export_participant(self.log, participant_id, target, redactor)

    # -- analytics ----------------------------------------------------------------
    def engagement(self, participant_id: Optional[str] = None, period: Optional["Period"] = None):
        from .insights import compute_engagement

        if participant_id is not None:
            sessions = self.state.sessions_for(participant_id)
            participants = [self.participant(participant_id)]
        else:
            sessions = self.state.all_sessions()
            participants = self.state.participants()
        return compute_engagement(sessions, participants, as_of=self._now(), period=period)

    def _dialogue_summaries(self, sessions: list[Session]) -> list[str]:
        summaries = []
        for s in sessions:
            audits = self.state.turn_audits(s.session_id)
            if audits:
                summary = audits[max(audits)]["analyzer"]["summary"]
                if summary:
                    summaries.append(summary)
        return summaries

    def insights(self, participant_id: str, period: Optional["Period"] = None, top_n: int = 50):
        from .insights import build_insight_bundle

        sessions = [
            s
            for s in self.state.sessions_for(participant_id)
            if period is None or period.contains(s.started_at)
        ]
        patient_texts = [m.text for s in sessions for m in s.messages if m.author is Author.PATIENT]
        return build_insight_bundle(
            patient_texts=patient_texts,
            session_summaries=self._dialogue_summaries(sessions),
            assessments=self.state.assessments_for(participant_id),
            gateway=self.gateway,
            period=period,
            period_selected=period is not None,
            top_n=top_n,
        )

    # -- monitoring stream -------------------------------------------------------------
    def _event_touches(self, e: DomainEvent, participant_id: str, session_ids: set[str]) -> bool:
        p = e.payload
        direct = p.get("participant_id")
        for node_key in ("participant", "assessment", "alert"):
            node = p.get(node_key)
            if isinstance(node, dict) and node.get("participant_id"):
                direct = direct or node.get("participant_id")
        sid = p.get("session_id")
        if isinstance(p.get("message"), dict):
            sid = sid or p["message"].get("session_id")
        return direct == participant_id or (sid in session_ids if sid else False)

    def events_after(self, cursor: int, participant_id: Optional[str] = None) -> Iterator[DomainEvent]:
        session_ids = (
            {s.session_id for s in self.state.sessions_for(participant_id)} if participant_id else set()
        )
        for e in self.log.replay(cursor + 1):
            if participant_id is None or self._event_touches(e, participant_id, session_ids):
                if e.kind == ev.SESSION_STARTED and e.payload.get("participant_id") == participant_id:
                    session_ids.add(e.payload["session_id"])
                yield e
