"""Engagement aggregates for the clinician dashboard.

Definitions, fixed here so every consumer agrees:

* an "entry" is one journaling session;
* duration only exists for sessions that ended (closed or halted);
* message length uses the cached length-unit count on each message;
* per-day rate is the mean over participants of entries divided by
  enrolled days up to the as-of instant;
* spreads are population standard deviations.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Sequence

from ..clock import ensure_utc
from ..core.stages import Stage, stage_label
from ..core.types import Author, Message, ParticipantProfile, Session


@dataclass(frozen=True)
class Period:
    start: datetime
    end: datetime  # exclusive

    def __post_init__(self) -> None:
        if self.end <= self.start:
            raise ValueError("period end must be after start")

    def contains(self, instant: datetime) -> bool:
        return self.start <= ensure_utc(instant) < self.end


@dataclass(frozen=True)
class StageDistribution:
    counts: dict[str, int]  # per-stage assistant message counts
    not_selected: int
    fractions: dict[str, float]  # of staged assistant messages; sums to 1
    staged_total: int
    message_total: int  # every message passed in, any author
    share_of_total: dict[str, float]  # per-stage share of message_total

    def to_json(self) -> dict:
        return {
            "counts": self.counts,
            "not_selected": self.not_selected,
            "fractions": self.fractions,
            "staged_total": self.staged_total,
            "message_total": self.message_total,
            "share_of_total": self.share_of_total,
        }


def stage_distribution(messages: Sequence[Message]) -> StageDistribution:
    counts = {stage.value: 0 for stage in Stage}
    not_selected = 0
    for m in messages:
        if m.author is not Author.ASSISTANT:
            continue
        if m.stage_at_emission is None:
            not_selected += 1
        else:
            counts[m.stage_at_emission.value] += 1
    staged_total = sum(counts.values())
    fractions = {
        label: (n / staged_total if staged_total else 0.0) for label, n in counts.items()
    }
    message_total = len(messages)
    share = {label: (n / message_total if message_total else 0.0) for label, n in counts.items()}
    share[stage_label(None)] = not_selected / message_total if message_total else 0.0
    return StageDistribution(
        counts=counts,
        not_selected=not_selected,
        fractions=fractions,
        staged_total=staged_total,
        message_total=message_total,
        share_of_total=share,
    )


@dataclass(frozen=True)
class EngagementMetrics:
    entries_total: int
    entries_per_participant_mean: float
    entries_per_day_mean: float
    session_duration_mean_s: float
    session_duration_sd_s: float
    message_length_mean_units: float
    message_length_sd_units: float
    messages_per_session_mean: float
    messages_per_session_sd: float
    weekly_entry_counts: tuple[int, ...]
    stage_distribution: StageDistribution
    empty_period: bool

    def to_json(self) -> dict:
        return {
            "entries_total": self.entries_total,
            "entries_per_participant_mean": self.entries_per_participant_mean,
            "entries_per_day_mean": self.entries_per_day_mean,
            "session_duration_mean_s": self.session_duration_mean_s,
            "session_duration_sd_s": self.session_duration_sd_s,
            "message_length_mean_units": self.message_length_mean_units,
            "message_length_sd_units": self.message_length_sd_units,
            "messages_per_session_mean": self.messages_per_session_mean,
            "messages_per_session_sd": self.messages_per_session_sd,
            "weekly_entry_counts": list(self.weekly_entry_counts),
            "stage_distribution": self.stage_distribution.to_json(),
            "empty_period": self.empty_period,
        }


def _mean(values: list[float]) -> float:
    return statistics.fmean(values) if values else 0.0


def _pstdev(values: list[float]) -> float:
    return statistics.pstdev(values) if values else 0.0


def compute_engagement(
    sessions: Sequence[Session],
    participants: Sequence[ParticipantProfile],
    as_of: datetime,
    period: Optional[Period] = None,
) -> EngagementMetrics:
    as_of = ensure_utc(as_of)
    in_scope = [s for s in sessions if period is None or period.contains(s.started_at)]
    by_participant: dict[str, int] = {p.participant_id: 0 for p in participants}
    for s in in_scope:
        by_participant[s.participant_id] = by_participant.get(s.participant_id, 0) + 1

    durations = [
        (s.ended_at - s.started_at).total_seconds() for s in in_scope if s.ended_at is not None
    ]
    messages = [m for s in in_scope for m in s.messages]
    lengths = [float(m.length_units) for m in messages]
    per_session_counts = [float(len(s.messages)) for s in in_scope]

    rate_end = (period.end if period else as_of).date()
    rates = []
    for p in participants:
        enrolled_days = max(1, (rate_end - p.enrollment_date).days + 1)
        rates.append(by_participant.get(p.participant_id, 0) / enrolled_days)

    anchor = period.start if period else (
        min((s.started_at for s in in_scope), default=as_of)
    )
    horizon = period.end if period else as_of
    n_weeks = max(1, -(-max(0, (horizon - anchor).days) // 7)) if in_scope else 0
    weekly = [0] * n_weeks
    for s in in_scope:
        bucket = (s.started_at - anchor).days // 7
        if 0 <= bucket < n_weeks:
            weekly[bucket] += 1

    return EngagementMetrics(
        entries_total=len(in_scope),
        entries_per_participant_mean=_mean([float(v) for v in by_participant.values()]) if participants else 0.0,
        entries_per_day_mean=_mean(rates),
        session_duration_mean_s=_mean(durations),
        session_duration_sd_s=_pstdev(durations),
        message_length_mean_units=_mean(lengths),
        message_length_sd_units=_pstdev(lengths),
        messages_per_session_mean=_mean(per_session_counts),
        messages_per_session_sd=_pstdev(per_session_counts),
        weekly_entry_counts=tuple(weekly),
        stage_distribution=stage_distribution(messages),
        empty_period=not in_scope,
    )
