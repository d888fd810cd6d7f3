from .adherence import (
    DROPOUT_STREAK_DAYS,
    REMINDER_STREAK_DAYS,
    AdherenceRecord,
    AdherenceSignal,
    check_adherence,
    record_interaction_day,
)
from .gate import GateVerdict, evaluate_gate
from .lexicon import (
    DEFAULT_LEXICON,
    LexiconTerm,
    SensitiveCategory,
    SensitiveLexicon,
    SensitiveMatch,
    detect_sensitive,
    dump_lexicon,
    load_lexicon,
)
from .review import REVIEW_WINDOW_HOURS, review_due_at, review_queue
from .suspension import FlaggedSession, SuspensionPolicy, apply_suspension_policy

__all__ = [
    "DROPOUT_STREAK_DAYS",
    "REMINDER_STREAK_DAYS",
    "AdherenceRecord",
    "AdherenceSignal",
    "check_adherence",
    "record_interaction_day",
    "GateVerdict",
    "evaluate_gate",
    "DEFAULT_LEXICON",
    "LexiconTerm",
    "SensitiveCategory",
    "SensitiveLexicon",
    "SensitiveMatch",
    "detect_sensitive",
    "dump_lexicon",
    "load_lexicon",
    "REVIEW_WINDOW_HOURS",
    "review_due_at",
    "review_queue",
    "FlaggedSession",
    "SuspensionPolicy",
    "apply_suspension_policy",
]
