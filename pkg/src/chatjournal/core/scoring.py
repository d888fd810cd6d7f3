"""Depression-scale banding."""

from __future__ import annotations

from enum import Enum


class SeverityBand(Enum):
    MINIMAL = "Minimal"
    MILD = "Mild"
    SEVERE = "Severe"


_BAND_RANK = {SeverityBand.MINIMAL: 0, SeverityBand.MILD: 1, SeverityBand.SEVERE: 2}


def band_rank(band: SeverityBand) -> int:
    return _BAND_RANK[band]


def classify_cesdc(score: int) -> SeverityBand:
    """Band a CES-DC total: below 16 Minimal, 16 and above Mild, 25 or higher Severe."""
    if score < 0:
        raise ValueError("CES-DC score must be non-negative")
    if score < 16:
        return SeverityBand.MINIMAL
    if score < 25:
        return SeverityBand.MILD
    return SeverityBand.SEVERE
