"""Shared builders for service-level tests: scripted provider + fixed clock."""

from datetime import date

from chatjournal.clock import ManualClock, utc
from chatjournal.engine import ANALYZER_MARKER, RESPONDER_MARKER, SUMMARY_MARKER
from chatjournal.gateway import Gateway, ScriptRule, ScriptedProvider
from chatjournal.ids import SequentialIds
from chatjournal.insights import INSIGHT_MARKER
from chatjournal.safety import SuspensionPolicy
from chatjournal.service import JournalService

START = utc(2026, 3, 2, 9, 0, 0)


def default_script_rules():
    """Analyzer walks rapport -> exploration; keyword hooks steer the rest."""
    a = f"[{ANALYZER_MARKER}]"
    return [
        ScriptRule(
            "analyzer-garbage",
            "%%% not parseable %%%",
            match_contains=(a, "garbage please"),
        ),
        ScriptRule(
            "analyzer-wrap",
            '{"summary": "winding down", "next_stage": "WrapUp"}',
            match_contains=(a, "wrap please"),
        ),
        ScriptRule(
            "analyzer-sensitive",
            '{"summary": "distressed", "next_stage": "SensitiveTopic"}',
            match_contains=(a, "sensitive please"),
        ),
        ScriptRule(
            "analyzer-turn-1",
            '{"summary": "opening chat", "next_stage": "RapportBuilding"}',
            match_contains=(a, "Completed patient turns: 1\n"),
        ),
        ScriptRule(
            "analyzer-turn-2",
            '{"summary": "warming up", "next_stage": "RapportBuilding"}',
            match_contains=(a, "Completed patient turns: 2\n"),
        ),
        ScriptRule(
            "analyzer-default",
            '{"summary": "talking through the day", "next_stage": "Exploration"}',
            match_contains=(a,),
        ),
        ScriptRule(
            "responder-sensitive",
            "I'm here with you. How strong are these thoughts right now?",
            match_contains=(f"[{RESPONDER_MARKER}]", "Stage: SensitiveTopic"),
        ),
        ScriptRule(
            "responder",
            "Tell me more about that.",
            match_contains=(f"[{RESPONDER_MARKER}]",),
        ),
        ScriptRule(
            "journal-summary",
            "Today I talked about my day. (<<digest8>>)",
            match_contains=(f"[{SUMMARY_MARKER}]",),
        ),
        ScriptRule(
            "insight",
            "Period recap: steady days. (<<digest8>>)",
            match_contains=(f"[{INSIGHT_MARKER}",),
        ),
        ScriptRule("fallback", "Mm-hm."),
    ]


def make_service(log=None, clock=None, rules=None, policy=None, busy_policy="wait"):
    provider = ScriptedProvider(rules if rules is not None else default_script_rules())
    return JournalService(
        log=log,
        gateway=Gateway(provider),
        clock=clock or ManualClock(START),
        ids=SequentialIds(),
        policy=policy or SuspensionPolicy(trigger_count=2, window_days=7, suspension_days=3),
        busy_policy=busy_policy,
    )


def enroll(service, alias="P1", cesdc=20, tz="UTC"):
    return service.register_participant(
        alias=alias,
        age=17,
        gender="F",
        cesdc_score=cesdc,
        timezone_name=tz,
        enrollment_date=date(2026, 3, 1),
    )


def open_session(service, participant_id, items=None, open_answer=""):
    service.submit_assessment(participant_id, items or [0] * 9, open_answer)
    return service.create_session(participant_id)
