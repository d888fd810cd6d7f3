"""Period summaries and the insight bundle.

Summaries are generated from the stored per-session dialogue summaries,
never from raw transcripts: prompts stay bounded and identifier exposure
stays low. Raw logs remain available through the session endpoints.
Every bundle carries the accuracy caveat, whatever else fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Optional, Sequence

from ..core.types import Assessment
from ..errors import ProviderUnavailable
from ..gateway import Gateway, PromptSegment
from .engagement import Period
from .wordfreq import WordFrequencyReport

ACCURACY_CAVEAT = (
    "Generated with a language model: summarized outcomes might not be accurate. "
    "Verify against the interaction logs."
)

INSIGHT_MARKER = "insight-summary"


class SummaryKind(Enum):
    EVENTS = "Events"
    EMOTIONS = "Emotions"
    COMBINED = "Combined"


_TASK = {
    SummaryKind.EVENTS: "List the major events across these journal summaries.",
    SummaryKind.EMOTIONS: "Describe the moods and emotions running through these journal summaries.",
    SummaryKind.COMBINED: "Summarize the period: major events first, then the overall emotional arc.",
}


def summarize_period(
    session_summaries: Sequence[str],
    kind: SummaryKind,
    gateway: Gateway,
    max_units: int = 6000,
) -> str:
    """May raise ProviderUnavailable; the bundle builder downgrades that
    to absent summary fields."""
    if not session_summaries:
        raise ValueError("period summaries need at least one session")
    body = "\n---\n".join(s for s in session_summaries if s)
    if len(body) > max_units:
        body = body[-max_units:]
    segments = [
        PromptSegment("system", f"[{INSIGHT_MARKER}:{kind.value}] {_TASK[kind]}"),
        PromptSegment("user", body or "(no summaries recorded)"),
    ]
    return gateway.generate(segments, purpose=f"insight-{kind.value.lower()}").text


def phq9_trend(assessments: Sequence[Assessment], period: Optional[Period] = None) -> list[tuple[datetime, int]]:
    """One point per assessment, date-ordered, gaps preserved."""
    points = [
        (a.created_at, a.total, a.assessment_id)
        for a in assessments
        if period is None or period.contains(a.created_at)
    ]
    points.sort(key=lambda p: (p[0], p[2]))
    return [(at, total) for at, total, _ in points]


@dataclass(frozen=True)
class InsightBundle:
    word_frequencies: WordFrequencyReport
    events_summary: Optional[str]
    emotions_summary: Optional[str]
    period_summary: Optional[str]
    phq9_trend: tuple[tuple[datetime, int], ...]
    accuracy_caveat: str = ACCURACY_CAVEAT

    def __post_init__(self) -> None:
        if not self.accuracy_caveat:
            raise ValueError("insight bundles always carry the accuracy caveat")

    def to_json(self) -> dict:
        return {
            "word_frequencies": self.word_frequencies.to_json(),
            "events_summary": self.events_summary,
            "emotions_summary": self.emotions_summary,
            "period_summary": self.period_summary,
            "phq9_trend": [[at.isoformat(), total] for at, total in self.phq9_trend],
            "accuracy_caveat": self.accuracy_caveat,
        }


def build_insight_bundle(
    patient_texts: Sequence[str],
    session_summaries: Sequence[str],
    assessments: Sequence[Assessment],
    gateway: Optional[Gateway],
    period: Optional[Period] = None,
    period_selected: bool = False,
    top_n: int = 50,
    word_report: Optional[WordFrequencyReport] = None,
) -> InsightBundle:
    from .wordfreq import word_frequencies  # local import keeps module load light

    report = word_report or word_frequencies(patient_texts, top_n=top_n)
    events = emotions = combined = None
    if gateway is not None and session_summaries:
        try:
            events = summarize_period(session_summaries, SummaryKind.EVENTS, gateway)
            emotions = summarize_period(session_summaries, SummaryKind.EMOTIONS, gateway)
            if period_selected:
                combined = summarize_period(session_summaries, SummaryKind.COMBINED, gateway)
        except ProviderUnavailable:
            events = emotions = combined = None
    return InsightBundle(
        word_frequencies=report,
        events_summary=events,
        emotions_summary=emotions,
        period_summary=combined,
        phq9_trend=tuple(phq9_trend(assessments, period)),
    )
