"""Request bodies for the HTTP API. Responses reuse the canonical JSON
serializers from the core model."""

from __future__ import annotations

from datetime import date
from typing import Optional

from pydantic import BaseModel, Field


class ParticipantIn(BaseModel):
    alias: str
    age: int = Field(ge=0)
    gender: str
    cesdc_score: int = Field(ge=0)
    timezone: str = "UTC"
    enrollment_date: Optional[date] = None
    participant_id: Optional[str] = None


class AssessmentIn(BaseModel):
    participant_id: str
    items: list[int] = Field(min_length=9, max_length=9)
    open_answer: str = ""


class SessionIn(BaseModel):
    participant_id: str


class MessageIn(BaseModel):
    text: str = Field(min_length=1)


class SummaryEditIn(BaseModel):
    text: str


class CloseIn(BaseModel):
    reflection: Optional[str] = None


class SuspendIn(BaseModel):
    days: Optional[int] = Field(default=None, ge=1)


class AdherenceCheckIn(BaseModel):
    today: Optional[date] = None
