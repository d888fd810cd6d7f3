from .affirmative import AffirmativeRules, affirmative
from .scoring import SeverityBand, band_rank, classify_cesdc
from .stages import NOT_SELECTED_LABEL, Stage, forward_rank, in_forward_order, parse_stage_label, stage_label
from .text import syllable_count
from .types import (
    SELF_HARM_ITEM_INDEX,
    SELF_HARM_ITEM_THRESHOLD,
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
    gate_verdict,
)

__all__ = [
    "AffirmativeRules",
    "affirmative",
    "SeverityBand",
    "band_rank",
    "classify_cesdc",
    "NOT_SELECTED_LABEL",
    "Stage",
    "forward_rank",
    "in_forward_order",
    "parse_stage_label",
    "stage_label",
    "syllable_count",
    "SELF_HARM_ITEM_INDEX",
    "SELF_HARM_ITEM_THRESHOLD",
    "AlertEvent",
    "AlertKind",
    "Assessment",
    "Author",
    "DeliveryState",
    "DeliveryStatus",
    "JournalEntry",
    "Message",
    "ParticipantProfile",
    "ParticipantStatus",
    "Session",
    "SessionMode",
    "SessionStatus",
    "gate_verdict",
]
