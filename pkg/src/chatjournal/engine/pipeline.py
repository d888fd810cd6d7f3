"""The per-turn conversational pipeline.

Each patient message runs the same sequence: safety-scan the text, ask
the analyzer for a summary and stage recommendation, apply the
deterministic stage guards, build the responder prompt from the stage
prompt plus summary plus recent-message window, and generate the reply.
The pipeline only *plans*: it returns the batch of domain events for the
turn, and the caller commits them atomically. A provider failure anywhere
aborts the plan, so no patient message is ever persisted without its
safety scan and response.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime
from typing import Optional

from ..core.serialize import alert_to_json, journal_entry_to_json, message_to_json, ts_to_json
from ..core.stages import Stage, stage_label
from ..core.types import (
    AlertEvent,
    AlertKind,
    Author,
    JournalEntry,
    Message,
    Session,
    SessionStatus,
)
from ..errors import ProviderUnavailable, SessionClosed
from ..gateway import Gateway, PromptSegment
from ..ids import IdFactory
from ..safety.lexicon import SensitiveLexicon, SensitiveMatch, detect_sensitive
from ..safety.review import review_due_at
from ..store import events as ev
from ..store.events import DomainEvent, event
from .analyzer import AnalyzerInput, AnalyzerOutput, run_analyzer, transcript
from .prompts import PromptRegistry, StagePrompt
from .transitions import decide_stage

RECENT_WINDOW = 6
SUMMARY_TURN_THRESHOLD = 3

RESPONDER_MARKER = "response-generator"
SUMMARY_MARKER = "journal-summary"


@dataclass(frozen=True)
class GeneratorInput:
    stage_prompt: StagePrompt
    dialogue_summary: str
    recent_messages: tuple[Message, ...]

    def __post_init__(self) -> None:
        if len(self.recent_messages) > RECENT_WINDOW:
            raise ValueError(f"recent window holds at most {RECENT_WINDOW} messages")


def assemble_generator_input(session: Session, stage: Stage, summary: str, registry: PromptRegistry) -> GeneratorInput:
    """Window is exactly the last min(6, N) session messages, in order."""
    prompt = registry.get(stage)
    return GeneratorInput(
        stage_prompt=prompt,
        dialogue_summary=summary,
        recent_messages=tuple(session.messages[-RECENT_WINDOW:]),
    )


_ROLE_OF = {Author.PATIENT: "user", Author.ASSISTANT: "assistant", Author.SYSTEM: "system"}


def generator_segments(gen: GeneratorInput) -> list[PromptSegment]:
    p = gen.stage_prompt
    system = (
        f"[{RESPONDER_MARKER}] Stage: {p.stage.value}\n"
        f"Task: {p.task_description}\n"
        f"Speaking rules: {p.speaking_rules}\n"
        f"Dialogue summary: {gen.dialogue_summary or '(none yet)'}"
    )
    segments = [PromptSegment("system", system)]
    segments += [PromptSegment(_ROLE_OF[m.author], m.text) for m in gen.recent_messages]
    return segments


def summary_segments(session: Session, dialogue_summary: str) -> list[PromptSegment]:
    system = (
        f"[{SUMMARY_MARKER}] Rewrite the conversation below as a short diary entry in the "
        "patient's own voice: first person, past tense, only what they actually said.\n"
        f"Dialogue summary: {dialogue_summary or '(none)'}"
    )
    tail = session.messages[-RECENT_WINDOW:]
    return [PromptSegment("system", system), PromptSegment("user", transcript(tail))]


def maybe_emit_summary(
    session: Session,
    dialogue_summary: str,
    gateway: Gateway,
    now: datetime,
) -> Optional[JournalEntry]:
    """A fresh assistant essay once per turn from the third turn on.

    A provider failure skips this turn's summary instead of failing the
    whole turn.
    """
    if session.status is not SessionStatus.OPEN:
        raise SessionClosed(session.session_id)
    if session.turn_count < SUMMARY_TURN_THRESHOLD:
        return None
    try:
        generation = gateway.generate(summary_segments(session, dialogue_summary), purpose="journal-summary")
    except ProviderUnavailable:
        return None
    return JournalEntry(
        version=len(session.summary_versions),
        text=generation.text,
        author=Author.ASSISTANT,
        created_at=now,
    )


@dataclass(frozen=True)
class TurnPlan:
    """Everything one turn wants to commit, in commit order."""

    events: list[DomainEvent]
    patient_message: Message
    assistant_message: Message
    next_stage: Stage
    analysis: AnalyzerOutput
    sensitive_matches: list[SensitiveMatch]
    summary_entry: Optional[JournalEntry]
    alert: Optional[AlertEvent]
    turn_index: int


def plan_turn(
    session: Session,
    patient_text: str,
    now: datetime,
    previous_summary: str,
    registry: PromptRegistry,
    lexicon: SensitiveLexicon,
    gateway: Gateway,
    ids: IdFactory,
) -> TurnPlan:
    """Run the pipeline for one patient message and plan its event batch.

    Raises ProviderUnavailable if the analyzer or responder call fails;
    nothing is persisted in that case. Preconditions on session status,
    mode, and participant suspension are the caller's job, since they
    need participant state.
    """
    if session.status is not SessionStatus.OPEN:
        raise SessionClosed(session.session_id)

    patient_message = Message(
        message_id=ids.new_id("msg"),
        session_id=session.session_id,
        author=Author.PATIENT,
        text=patient_text,
        timestamp=now,
        stage_at_emission=session.current_stage,
    )
    in_flight = session.with_message(patient_message)
    turn_index = in_flight.turn_count

    matches = detect_sensitive(patient_text, lexicon)
    analysis = run_analyzer(
        AnalyzerInput(
            turn_count=turn_index,
            current_stage=session.current_stage,
            full_dialogue=in_flight.messages,
            stage_criteria=registry.criteria_text(),
            previous_summary=previous_summary,
        ),
        gateway,
    )
    next_stage = decide_stage(session.current_stage, analysis.recommended_stage, turn_index, bool(matches))

    generator_input = assemble_generator_input(in_flight, next_stage, analysis.dialogue_summary, registry)
    generation = gateway.generate(generator_segments(generator_input), purpose="responder")
    assistant_message = Message(
        message_id=ids.new_id("msg"),
        session_id=session.session_id,
        author=Author.ASSISTANT,
        text=generation.text,
        timestamp=now,
        stage_at_emission=next_stage,
    )

    after_turn = replace(
        in_flight,
        messages=in_flight.messages + (assistant_message,),
        stage_trace=in_flight.stage_trace + ((turn_index, next_stage),),
    )
    summary_entry = maybe_emit_summary(after_turn, analysis.dialogue_summary, gateway, now)

    events: list[DomainEvent] = [
        event(ev.MESSAGE_APPENDED, now, "Patient", {"message": message_to_json(patient_message)}),
        event(
            ev.TURN_AUDITED,
            now,
            "System",
            {
                "session_id": session.session_id,
                "turn_index": turn_index,
                "analyzer": {
                    "raw_payload": analysis.raw_provider_payload,
                    "summary": analysis.dialogue_summary,
                    "recommended_stage": stage_label(analysis.recommended_stage),
                },
                "generator": {
                    "stage": next_stage.value,
                    "dialogue_summary": generator_input.dialogue_summary,
                    "message_ids": [m.message_id for m in generator_input.recent_messages],
                },
                "sensitive": {
                    "flag": bool(matches),
                    "matches": [m.to_json() for m in matches],
                },
                "config_hash": registry.config_hash,
            },
        ),
        event(ev.MESSAGE_APPENDED, now, "Assistant", {"message": message_to_json(assistant_message)}),
        event(
            ev.STAGE_RECORDED,
            now,
            "System",
            {"session_id": session.session_id, "turn_index": turn_index, "stage": next_stage.value},
        ),
    ]
    if summary_entry is not None:
        events.append(
            event(
                ev.SUMMARY_VERSION_ADDED,
                now,
                "Assistant",
                {"session_id": session.session_id, "entry": journal_entry_to_json(summary_entry)},
            )
        )

    alert: Optional[AlertEvent] = None
    if next_stage is Stage.SENSITIVE_TOPIC:
        # exactly one alert per sensitive turn; triggers record why
        triggers: list[dict] = [dict(m.to_json(), type="lexicon") for m in matches]
        if analysis.recommended_stage is Stage.SENSITIVE_TOPIC:
            triggers.append({"type": "analyzer", "stage": Stage.SENSITIVE_TOPIC.value})
        if not triggers:
            # analyzer gave nothing usable while the sensitive stage was held
            triggers.append({"type": "stage_held", "stage": Stage.SENSITIVE_TOPIC.value})
        alert = AlertEvent(
            alert_id=ids.new_id("alert"),
            kind=AlertKind.SENSITIVE_TURN,
            participant_id=session.participant_id,
            session_id=session.session_id,
            created_at=now,
            payload={"triggers": triggers, "turn_index": turn_index},
        )
        events.append(event(ev.ALERT_RAISED, now, "System", {"alert": alert_to_json(alert)}))

    return TurnPlan(
        events=events,
        patient_message=patient_message,
        assistant_message=assistant_message,
        next_stage=next_stage,
        analysis=analysis,
        sensitive_matches=matches,
        summary_entry=summary_entry,
        alert=alert,
        turn_index=turn_index,
    )


@dataclass(frozen=True)
class ClosePlan:
    events: list[DomainEvent]
    review_alert: AlertEvent


def plan_close(
    session: Session,
    reflection: Optional[str],
    now: datetime,
    ids: IdFactory,
) -> ClosePlan:
    """Close the session and schedule its human-review deadline."""
    if session.status is not SessionStatus.OPEN:
        raise SessionClosed(session.session_id)
    review_alert = AlertEvent(
        alert_id=ids.new_id("alert"),
        kind=AlertKind.REVIEW_DUE,
        participant_id=session.participant_id,
        session_id=session.session_id,
        created_at=now,
        payload={"due_at": ts_to_json(review_due_at(now))},
    )
    events = [
        event(
            ev.SESSION_CLOSED,
            now,
            "Patient",
            {"session_id": session.session_id, "ended_at": ts_to_json(now), "reflection": reflection},
        ),
        event(ev.ALERT_RAISED, now, "System", {"alert": alert_to_json(review_alert)}),
    ]
    return ClosePlan(events=events, review_alert=review_alert)
