"""Sensitive-content lexicon and matching.

Matching is plain case-folded substring search over clinician-curated
patterns; the dialogue analyzer's stage recommendation provides the
semantic second layer. Overlapping hits collapse to the longest match.

Lexicon files are versioned plain text, one ``pattern | category`` per
line, ``#`` comments allowed::

    version 2
    self-harm | SelfHarm
    end my life | Suicide
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from ..errors import ConfigError


class SensitiveCategory(Enum):
    SELF_HARM = "SelfHarm"
    SUICIDE = "Suicide"
    OTHER = "Other"


@dataclass(frozen=True)
class LexiconTerm:
    pattern: str
    category: SensitiveCategory

    def __post_init__(self) -> None:
        if not self.pattern.strip():
            raise ValueError("lexicon patterns must be non-empty")


@dataclass(frozen=True)
class SensitiveLexicon:
    version: int
    terms: tuple[LexiconTerm, ...]
    editable_by: str = "clinician"

    def bump(self, terms: tuple[LexiconTerm, ...]) -> "SensitiveLexicon":
        """Versions only move forward; edits produce a new lexicon."""
        return SensitiveLexicon(version=self.version + 1, terms=terms, editable_by=self.editable_by)


DEFAULT_LEXICON = SensitiveLexicon(
    version=1,
    terms=(
        LexiconTerm("self-harm", SensitiveCategory.SELF_HARM),
        LexiconTerm("self harm", SensitiveCategory.SELF_HARM),
        LexiconTerm("hurt myself", SensitiveCategory.SELF_HARM),
        LexiconTerm("hurting myself", SensitiveCategory.SELF_HARM),
        LexiconTerm("cut myself", SensitiveCategory.SELF_HARM),
        LexiconTerm("kill myself", SensitiveCategory.SUICIDE),
        LexiconTerm("suicide", SensitiveCategory.SUICIDE),
        LexiconTerm("suicidal", SensitiveCategory.SUICIDE),
        LexiconTerm("end my life", SensitiveCategory.SUICIDE),
        LexiconTerm("want to die", SensitiveCategory.SUICIDE),
        LexiconTerm("better off dead", SensitiveCategory.SUICIDE),
        LexiconTerm("overdose", SensitiveCategory.OTHER),
    ),
)


@dataclass(frozen=True)
class SensitiveMatch:
    term: str
    category: SensitiveCategory
    start: int
    end: int

    def to_json(self) -> dict:
        return {"term": self.term, "category": self.category.value, "start": self.start, "end": self.end}


def detect_sensitive(text: str, lexicon: SensitiveLexicon | None = None) -> list[SensitiveMatch]:
    """All lexicon hits in ``text``, longest-match-wins on overlap.

    Spans index the case-folded text, which is identical to the input
    for scripts whose fold is length-preserving.
    """
    lexicon = lexicon or DEFAULT_LEXICON
    folded = text.casefold()
    if not folded:
        return []
    raw: list[SensitiveMatch] = []
    for term in lexicon.terms:
        needle = term.pattern.casefold()
        start = folded.find(needle)
        while start != -1:
            raw.append(SensitiveMatch(term.pattern, term.category, start, start + len(needle)))
            start = folded.find(needle, start + 1)
    # longest first, then leftmost, then stable by pattern for ties
    raw.sort(key=lambda m: (-(m.end - m.start), m.start, m.term))
    kept: list[SensitiveMatch] = []
    for candidate in raw:
        if not any(candidate.start < k.end and k.start < candidate.end for k in kept):
            kept.append(candidate)
    kept.sort(key=lambda m: (m.start, m.end))
    return kept


def load_lexicon(path: str | Path) -> SensitiveLexicon:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    version = 1
    terms: list[LexiconTerm] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.lower().startswith("version"):
            try:
                version = int(stripped.split()[1])
            except (IndexError, ValueError) as exc:
                raise ConfigError(f"bad version line {lineno}: {stripped!r}") from exc
            continue
        if "|" not in stripped:
            raise ConfigError(f"line {lineno} is not 'pattern | category': {stripped!r}")
        pattern, _, category = stripped.rpartition("|")
        try:
            terms.append(LexiconTerm(pattern.strip(), SensitiveCategory(category.strip())))
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    if not terms:
        raise ConfigError(f"lexicon {path} has no terms")
    return SensitiveLexicon(version=version, terms=tuple(terms))


def dump_lexicon(lexicon: SensitiveLexicon, path: str | Path) -> None:
    body = [f"version {lexicon.version}"]
    body += [f"{t.pattern} | {t.category.value}" for t in lexicon.terms]
    Path(path).write_text("\n".join(body) + "\n", encoding="utf-8")
