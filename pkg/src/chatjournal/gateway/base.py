"""Provider-neutral text generation interface.

Everything that needs generated text goes through :class:`Gateway`, which
owns prompt-size enforcement and the audit trail. No other module builds
provider requests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Protocol, Sequence

from ..errors import PromptTooLarge

DEFAULT_TEMPERATURE = 0.7
DEFAULT_PRESENCE_PENALTY = 0.5
DEFAULT_FREQUENCY_PENALTY = 0.5


@dataclass(frozen=True)
class GenerationParams:
    temperature: float = DEFAULT_TEMPERATURE
    presence_penalty: float = DEFAULT_PRESENCE_PENALTY
    frequency_penalty: float = DEFAULT_FREQUENCY_PENALTY
    max_output_units: int = 1024
    model_name: str = "gpt-4"

    def to_json(self) -> dict[str, Any]:
        return {
            "temperature": self.temperature,
            "presence_penalty": self.presence_penalty,
            "frequency_penalty": self.frequency_penalty,
            "max_output_units": self.max_output_units,
            "model_name": self.model_name,
        }


@dataclass(frozen=True)
class PromptSegment:
    """One role-tagged chunk of the prompt: role in {system, user, assistant}."""

    role: str
    text: str

    def __post_init__(self) -> None:
        if self.role not in ("system", "user", "assistant"):
            raise ValueError(f"unknown prompt role: {self.role}")


@dataclass(frozen=True)
class Generation:
    text: str
    usage: dict[str, int] = field(default_factory=dict)


class Provider(Protocol):
    name: str

    def complete(self, segments: Sequence[PromptSegment], params: GenerationParams) -> Generation: ...


@dataclass(frozen=True)
class AuditRecord:
    purpose: str
    segments: tuple[PromptSegment, ...]
    params: GenerationParams
    response_text: str
    usage: dict[str, int]
    config_hash: str


AuditSink = Callable[[AuditRecord], None]


class Gateway:
    """Front door for all generation calls.

    ``context_budget_units`` bounds the summed prompt length (measured in
    characters, a deliberate over-estimate of tokens); oversized prompts
    fail fast instead of failing at the provider.
    """

    def __init__(
        self,
        provider: Provider,
        params: GenerationParams | None = None,
        context_budget_units: int = 48_000,
        audit_sink: Optional[AuditSink] = None,
        config_hash: str = "",
    ) -> None:
        self.provider = provider
        self.params = params or GenerationParams()
        self.context_budget_units = context_budget_units
        self._audit_sink = audit_sink
        self.config_hash = config_hash

    def set_audit_sink(self, sink: Optional[AuditSink]) -> None:
        self._audit_sink = sink

    def generate(
        self,
        segments: Sequence[PromptSegment],
        purpose: str = "generate",
        params: GenerationParams | None = None,
    ) -> Generation:
        if not segments:
            raise ValueError("prompt requires at least one segment")
        total = sum(len(s.text) for s in segments)
        if total > self.context_budget_units:
            raise PromptTooLarge(f"prompt of {total} units exceeds budget {self.context_budget_units}")
        params = params or self.params
        result = self.provider.complete(tuple(segments), params)
        if self._audit_sink is not None:
            self._audit_sink(
                AuditRecord(
                    purpose=purpose,
                    segments=tuple(segments),
                    params=params,
                    response_text=result.text,
                    usage=result.usage,
                    config_hash=self.config_hash,
                )
            )
        return result
