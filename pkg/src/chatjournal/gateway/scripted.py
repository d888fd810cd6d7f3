"""Deterministic scripted provider for tests and simulation.

Rules are evaluated strictly in order; the first match wins. A rule with
no match conditions is a catch-all, and every script must end in one.
Identical prompt segments always produce identical output, across
processes and platforms.

Rule files are plain text in INI form::

    [rule:probe-day]
    match_role = system
    match_contains = Task: exploration
    response = What else happened today?

    [fallback]
    response = I hear you. Tell me more.

``match_contains`` may span several lines; every line must appear
(case-folded) in the searched segments. ``once = true`` consumes a rule
after its first use. Responses may reference ``<<last_user>>``,
``<<digest8>>`` and ``<<segment_count>>``.
"""

from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..errors import ConfigError
from .base import Generation, GenerationParams, PromptSegment


@dataclass(frozen=True)
class ScriptRule:
    name: str
    response: str
    match_role: str | None = None
    match_contains: tuple[str, ...] = ()
    once: bool = False

    @property
    def is_catch_all(self) -> bool:
        return self.match_role is None and not self.match_contains

    def matches(self, segments: Sequence[PromptSegment]) -> bool:
        searched = [s for s in segments if self.match_role is None or s.role == self.match_role]
        if self.match_role is not None and not searched:
            return False
        haystack = "\n".join(s.text for s in searched).casefold()
        return all(needle.casefold() in haystack for needle in self.match_contains)


def _digest8(segments: Sequence[PromptSegment]) -> str:
    h = hashlib.sha256()
    for s in segments:
        h.update(f"{s.role}:{s.text}\n".encode("utf-8"))
    return h.hexdigest()[:8]


def render_response(template: str, segments: Sequence[PromptSegment]) -> str:
    last_user = next((s.text for s in reversed(segments) if s.role == "user"), "")
    out = template.replace("<<last_user>>", last_user)
    out = out.replace("<<digest8>>", _digest8(segments))
    out = out.replace("<<segment_count>>", str(len(segments)))
    return out


@dataclass
class ScriptedProvider:
    rules: list[ScriptRule]
    name: str = "scripted"
    _spent: set[str] = field(default_factory=set)

    def __post_init__(self) -> None:
        if not any(r.is_catch_all for r in self.rules):
            raise ConfigError("scripted provider requires a catch-all fallback rule")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, str]], fallback: str) -> "ScriptedProvider":
        rules = [
            ScriptRule(name=f"pair-{i}", response=resp, match_contains=(needle,))
            for i, (needle, resp) in enumerate(pairs)
        ]
        rules.append(ScriptRule(name="fallback", response=fallback))
        return cls(rules)

    def complete(self, segments: Sequence[PromptSegment], params: GenerationParams) -> Generation:
        for rule in self.rules:
            if rule.once and rule.name in self._spent:
                continue
            if rule.matches(segments):
                if rule.once:
                    self._spent.add(rule.name)
                text = render_response(rule.response, segments)
                return Generation(
                    text=text,
                    usage={
                        "prompt_units": sum(len(s.text) for s in segments),
                        "completion_units": len(text),
                    },
                )
        raise AssertionError("unreachable: catch-all rule is enforced at construction")

    def reset(self) -> None:
        self._spent.clear()


def load_script(path: str | Path) -> ScriptedProvider:
    parser = configparser.ConfigParser(interpolation=None)
    read = parser.read(path, encoding="utf-8")
    if not read:
        raise ConfigError(f"script file not found: {path}")
    rules: list[ScriptRule] = []
    for section in parser.sections():
        if not (section.startswith("rule:") or section == "fallback"):
            raise ConfigError(f"unknown script section [{section}]")
        body = parser[section]
        if "response" not in body:
            raise ConfigError(f"script rule [{section}] is missing a response")
        contains = tuple(line for line in body.get("match_contains", "").splitlines() if line.strip())
        rules.append(
            ScriptRule(
                name=section,
                response=body["response"],
                match_role=body.get("match_role") or None,
                match_contains=contains,
                once=body.getboolean("once", fallback=False),
            )
        )
    return ScriptedProvider(rules)
