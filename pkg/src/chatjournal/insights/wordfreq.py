"""Word-frequency reports behind a pluggable content-word tokenizer.

The default tokenizer case-folds, splits on non-word characters, and
drops stopwords. Anything smarter (a morphological analyzer that keeps
only nouns and verbs, say) plugs in through the same callable interface
and identifies itself via ``tokenizer_id`` so reports stay traceable.
"""

from __future__ import annotations

import io
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Protocol

_WORD_RE = re.compile(r"\w+", re.UNICODE)

DEFAULT_STOPWORDS = frozenset(
    """a an and are as at be but by for from had has have i if in into is it its me my
    no not of on or so such that the their then there these they this to was we were
    will with you your""".split()
)


class ContentTokenizer(Protocol):
    tokenizer_id: str

    def __call__(self, text: str) -> list[str]: ...


class StopwordTokenizer:
    """Case-folded word split minus stopwords; pure-token approximation of
    content-word filtering."""

    def __init__(self, stopwords: frozenset[str] | set[str] = DEFAULT_STOPWORDS) -> None:
        self._stopwords = frozenset(w.casefold() for w in stopwords)
        self.tokenizer_id = f"stopword-v1({len(self._stopwords)})"

    def __call__(self, text: str) -> list[str]:
        return [t for t in (m.group(0).casefold() for m in _WORD_RE.finditer(text)) if t not in self._stopwords]


@dataclass(frozen=True)
class WordFrequencyReport:
    ranked: tuple[tuple[str, int], ...]  # count desc, then token asc
    tokenizer_id: str
    period_label: str
    total_tokens: int

    def __post_init__(self) -> None:
        if any(count <= 0 for _, count in self.ranked):
            raise ValueError("word frequency counts must be positive")

    def to_json(self) -> dict:
        return {
            "ranked": [[token, count] for token, count in self.ranked],
            "tokenizer_id": self.tokenizer_id,
            "period_label": self.period_label,
            "total_tokens": self.total_tokens,
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("token,count\n")
        for token, count in self.ranked:
            escaped = '"' + token.replace('"', '""') + '"' if ("," in token or '"' in token) else token
            out.write(f"{escaped},{count}\n")
        return out.getvalue()


def word_frequencies(
    texts: Iterable[str],
    tokenizer: ContentTokenizer | None = None,
    stopwords: frozenset[str] | set[str] | None = None,
    top_n: int = 50,
    period_label: str = "",
) -> WordFrequencyReport:
    if top_n < 1:
        raise ValueError("top_n must be at least 1")
    if tokenizer is None:
        tokenizer = StopwordTokenizer(stopwords if stopwords is not None else DEFAULT_STOPWORDS)
    counts: Counter[str] = Counter()
    total = 0
    for text in texts:
        tokens = tokenizer(text)
        counts.update(tokens)
        total += len(tokens)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
    return WordFrequencyReport(
        ranked=tuple(ranked),
        tokenizer_id=tokenizer.tokenizer_id,
        period_label=period_label,
        total_tokens=total,
    )
