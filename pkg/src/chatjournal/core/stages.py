"""Conversation stages.

Three stages form a forward-only protocol (rapport building, then
exploration, then wrap-up). The sensitive-topic stage sits outside that
order: it is an interrupt that can fire from any stage. ``None`` is used
wherever a stage slot may legitimately be unfilled (the analyzer failed
to pick one, or the conversation has not produced a stage yet); it
serializes as the string ``"NotSelected"``.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

NOT_SELECTED_LABEL = "NotSelected"


class Stage(Enum):
    RAPPORT_BUILDING = "RapportBuilding"
    EXPLORATION = "Exploration"
    WRAP_UP = "WrapUp"
    SENSITIVE_TOPIC = "SensitiveTopic"


# Position in the forward order; the sensitive stage has none.
_FORWARD_ORDER = {
    Stage.RAPPORT_BUILDING: 0,
    Stage.EXPLORATION: 1,
    Stage.WRAP_UP: 2,
}


def forward_rank(stage: Stage) -> int:
    """Rank within RapportBuilding < Exploration < WrapUp.

    Raises for the sensitive stage, which is outside the order.
    """
    return _FORWARD_ORDER[stage]


def in_forward_order(stage: Optional[Stage]) -> bool:
    return stage in _FORWARD_ORDER


def stage_label(stage: Optional[Stage]) -> str:
    return stage.value if stage is not None else NOT_SELECTED_LABEL


def parse_stage_label(label: str) -> Optional[Stage]:
    """Strict parse of a serialized stage field; raises on unknown labels."""
    if label == NOT_SELECTED_LABEL:
        return None
    return Stage(label)
