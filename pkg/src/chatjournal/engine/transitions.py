"""Deterministic stage guards around the analyzer's recommendation.

The analyzer only suggests; these rules decide. A sensitive flag from the
content scan overrides everything. An analyzer failure keeps the current
stage. Recommendations that would move backwards along the forward order
are ignored. Leaving the sensitive stage always lands in exploration, so
the conversation re-grounds before it can wrap up.
"""

from __future__ import annotations

from typing import Optional

from ..core.stages import Stage, forward_rank, in_forward_order


def decide_stage(
    current: Optional[Stage],
    recommended: Optional[Stage],
    turn_count: int,
    sensitive_flag: bool,
) -> Stage:
    if turn_count < 1:
        raise ValueError("decide_stage runs after at least one completed turn")
    if sensitive_flag:
        return Stage.SENSITIVE_TOPIC
    if current is Stage.SENSITIVE_TOPIC:
        if recommended is None or recommended is Stage.SENSITIVE_TOPIC:
            return Stage.SENSITIVE_TOPIC
        return Stage.EXPLORATION
    if recommended is None:
        return current if current is not None else Stage.RAPPORT_BUILDING
    if recommended is Stage.SENSITIVE_TOPIC:
        return Stage.SENSITIVE_TOPIC
    baseline = current if in_forward_order(current) else Stage.RAPPORT_BUILDING
    if forward_rank(recommended) < forward_rank(baseline):
        return baseline
    return recommended
