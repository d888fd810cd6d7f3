"""Dialogue analyzer: running summary plus next-stage recommendation.

The analyzer sees the turn count, the current stage, the whole dialogue,
and the per-stage recommendation criteria, and must answer with a JSON
object ``{"summary": ..., "next_stage": ...}``. Anything unparseable
degrades safely: the stage slot stays unselected and the previous summary
is kept, so one bad completion never derails a session.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from ..core.stages import Stage
from ..core.types import Author, Message
from ..gateway import Gateway, PromptSegment

ANALYZER_MARKER = "dialogue-analyzer"

_STAGE_ALIASES = {
    "rapportbuilding": Stage.RAPPORT_BUILDING,
    "rapport": Stage.RAPPORT_BUILDING,
    "exploration": Stage.EXPLORATION,
    "explore": Stage.EXPLORATION,
    "wrapup": Stage.WRAP_UP,
    "wrappingup": Stage.WRAP_UP,
    "sensitivetopic": Stage.SENSITIVE_TOPIC,
    "sensitive": Stage.SENSITIVE_TOPIC,
}

_JSON_RE = re.compile(r"\{.*\}", re.DOTALL)


@dataclass(frozen=True)
class AnalyzerInput:
    turn_count: int
    current_stage: Optional[Stage]
    full_dialogue: tuple[Message, ...]
    stage_criteria: str
    previous_summary: str = ""

    def __post_init__(self) -> None:
        patient_turns = sum(1 for m in self.full_dialogue if m.author is Author.PATIENT)
        if self.turn_count != patient_turns:
            raise ValueError("turn_count must equal the patient-message count")
        if not self.full_dialogue:
            raise ValueError("analyzer requires a non-empty dialogue")


@dataclass(frozen=True)
class AnalyzerOutput:
    dialogue_summary: str
    recommended_stage: Optional[Stage]
    raw_provider_payload: str


def parse_stage_name(raw: str) -> Optional[Stage]:
    key = re.sub(r"[^a-z]", "", raw.casefold())
    return _STAGE_ALIASES.get(key)


def transcript(messages: tuple[Message, ...] | list[Message]) -> str:
    return "\n".join(f"{m.author.value}: {m.text}" for m in messages)


def analyzer_segments(inp: AnalyzerInput) -> list[PromptSegment]:
    current = inp.current_stage.value if inp.current_stage else "none yet"
    system = (
        f"[{ANALYZER_MARKER}] You read a journaling conversation between a patient and an "
        "assistant and produce two things: a one-paragraph summary of the whole dialogue, "
        "and a recommendation for which stage the conversation should be in next.\n"
        f"Completed patient turns: {inp.turn_count}\n"
        f"Current stage: {current}\n"
        "Stage criteria:\n"
        f"{inp.stage_criteria}\n"
        'Answer with JSON only: {"summary": "...", "next_stage": "<stage name>"}'
    )
    return [
        PromptSegment("system", system),
        PromptSegment("user", transcript(inp.full_dialogue)),
    ]


def parse_analyzer_payload(payload: str, previous_summary: str) -> AnalyzerOutput:
    match = _JSON_RE.search(payload)
    if match:
        try:
            data = json.loads(match.group(0))
        except json.JSONDecodeError:
            data = None
        if isinstance(data, dict):
            summary = data.get("summary")
            stage = parse_stage_name(str(data.get("next_stage", "")))
            return AnalyzerOutput(
                dialogue_summary=summary if isinstance(summary, str) and summary else previous_summary,
                recommended_stage=stage,
                raw_provider_payload=payload,
            )
    return AnalyzerOutput(
        dialogue_summary=previous_summary,
        recommended_stage=None,
        raw_provider_payload=payload,
    )


def run_analyzer(inp: AnalyzerInput, gateway: Gateway) -> AnalyzerOutput:
    """May raise ProviderUnavailable; the caller owns rollback."""
    generation = gateway.generate(analyzer_segments(inp), purpose="analyzer")
    return parse_analyzer_payload(generation.text, inp.previous_summary)
