"""Affirmative-answer detection for the open self-harm question.

A deliberately simple, clinician-editable rule list: ordered lexicon
terms matched case-folded as substrings, with a negation guard that
suppresses a match when a negator token appears shortly before it.
No ML classifier; the rules ship as configuration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)

DEFAULT_AFFIRMATIVE_TERMS = (
    "attempted",
    "tried to hurt myself",
    "tried to kill myself",
    "hurt myself",
    "cut myself",
    "overdosed",
    "yes",
)

DEFAULT_NEGATORS = (
    "no",
    "not",
    "never",
    "none",
    "didn't",
    "didnt",
    "haven't",
    "havent",
    "don't",
    "dont",
    "without",
)


@dataclass(frozen=True)
class AffirmativeRules:
    """Ordered affirmative lexicon plus negation guard.

    ``guard_window`` is how many tokens before a match a negator may sit
    and still suppress it.
    """

    terms: tuple[str, ...] = DEFAULT_AFFIRMATIVE_TERMS
    negators: tuple[str, ...] = DEFAULT_NEGATORS
    guard_window: int = 3

    def __post_init__(self) -> None:
        if not all(t.strip() for t in self.terms):
            raise ValueError("affirmative terms must be non-empty")


def affirmative(open_answer: str, rules: AffirmativeRules | None = None) -> bool:
    """True iff the answer affirms recent self-harm or a suicide attempt.

    Empty or whitespace-only answers are never affirmative.
    """
    rules = rules or AffirmativeRules()
    folded = open_answer.casefold()
    if not folded.strip():
        return False
    tokens = [(m.group(0), m.start()) for m in _TOKEN_RE.finditer(folded)]
    negator_set = {n.casefold() for n in rules.negators}
    for term in rules.terms:
        needle = term.casefold()
        start = folded.find(needle)
        while start != -1:
            preceding = [t for t, pos in tokens if pos < start]
            guard = preceding[-rules.guard_window:]
            if not any(t in negator_set for t in guard):
                return True
            start = folded.find(needle, start + 1)
    return False
