"""Pre-journaling assessment gate."""

from __future__ import annotations

from enum import Enum

from ..core.types import Assessment


class GateVerdict(Enum):
    PROCEED = "Proceed"
    CALMING_CONTENT = "CalmingContent"


def evaluate_gate(assessment: Assessment) -> GateVerdict:
    """Calming content whenever the assessment tripped the gate.

    The caller is responsible for raising the GateTrip alert in the same
    transaction and for forcing same-day sessions into calming mode; the
    service layer wires both.
    """
    return GateVerdict.CALMING_CONTENT if assessment.gate_tripped else GateVerdict.PROCEED
