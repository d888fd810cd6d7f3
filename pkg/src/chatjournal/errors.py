"""Exception types shared across the service."""


class ChatJournalError(Exception):
    """Base class for all domain errors."""

    code = "internal_error"


class SessionClosed(ChatJournalError):
    code = "session_closed"


class ParticipantSuspended(ChatJournalError):
    code = "participant_suspended"


class CalmingModeActive(ChatJournalError):
    """Raised when a conversational turn is attempted on a calming-content session."""

    code = "calming_mode_active"


class GateRequired(ChatJournalError):
    """No same-day pre-journaling assessment exists for the participant."""

    code = "gate_required"


class ProviderUnavailable(ChatJournalError):
    code = "provider_unavailable"


class PromptTooLarge(ChatJournalError):
    code = "prompt_too_large"


class MissingStagePrompt(ChatJournalError):
    code = "missing_stage_prompt"


class ConflictError(ChatJournalError):
    """Optimistic concurrency check failed: the log head moved."""

    code = "conflict"


class Busy(ChatJournalError):
    """Another writer currently holds the per-session lock."""

    code = "busy"


class DateOutOfRange(ChatJournalError):
    code = "date_out_of_range"


class NotFound(ChatJournalError):
    code = "not_found"


class AuthFailure(ChatJournalError):
    code = "auth_failure"


class ScopeDenied(ChatJournalError):
    code = "scope_denied"


class ConfigError(ChatJournalError):
    code = "config_error"
