"""Interaction-day tracking and the reminder / dropout protocol.

Day boundaries follow the participant's own calendar (their stored
timezone), never the server's. A missed-day streak raises a reminder flag
exactly on its third day and a dropout flag exactly on its fourth; later
days of the same streak stay silent.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from enum import Enum

from ..errors import DateOutOfRange


class AdherenceSignal(Enum):
    NONE = "None"
    REMINDER_DUE = "ReminderDue"
    DROPOUT_FLAG = "DropoutFlag"


REMINDER_STREAK_DAYS = 3
DROPOUT_STREAK_DAYS = 4


@dataclass(frozen=True)
class AdherenceRecord:
    participant_id: str
    enrollment_date: date
    interaction_days: frozenset[date]

    def consecutive_missed(self, today: date) -> int:
        """Length of the missed-day streak ending today (0 when today has interaction)."""
        if today < self.enrollment_date:
            raise DateOutOfRange(f"{today} precedes enrollment {self.enrollment_date}")
        streak = 0
        day = today
        while day >= self.enrollment_date and day not in self.interaction_days:
            streak += 1
            day -= timedelta(days=1)
        return streak


def record_interaction_day(record: AdherenceRecord, local_date: date) -> AdherenceRecord:
    if local_date < record.enrollment_date:
        raise DateOutOfRange(f"{local_date} precedes enrollment {record.enrollment_date}")
    return AdherenceRecord(
        participant_id=record.participant_id,
        enrollment_date=record.enrollment_date,
        interaction_days=record.interaction_days | {local_date},
    )


def check_adherence(record: AdherenceRecord, today: date) -> AdherenceSignal:
    """Signal due exactly today, once per streak."""
    streak = record.consecutive_missed(today)
    if streak == REMINDER_STREAK_DAYS:
        return AdherenceSignal.REMINDER_DUE
    if streak == DROPOUT_STREAK_DAYS:
        return AdherenceSignal.DROPOUT_FLAG
    return AdherenceSignal.NONE
