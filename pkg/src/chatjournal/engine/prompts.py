"""Stage prompts and their versioned configuration file.

Each stage carries a task description (what the responder should do) and
speaking rules (how it should sound), plus the criteria text the dialogue
analyzer uses to recommend that stage. The engine refuses to accept
sessions until all four stages are registered. The file hash is recorded
on every session so transcripts can be traced to the exact prompt
wording that produced them.

File format (INI, one section per stage)::

    [RapportBuilding]
    task_description = ...
    speaking_rules = ...
    criteria = ...
"""

from __future__ import annotations

import configparser
import hashlib
import io
from dataclasses import dataclass
from pathlib import Path

from ..core.stages import Stage
from ..errors import ConfigError, MissingStagePrompt


@dataclass(frozen=True)
class StagePrompt:
    stage: Stage
    task_description: str
    speaking_rules: str
    criteria: str = ""


class PromptRegistry:
    def __init__(self, prompts: dict[Stage, StagePrompt], version: int = 1) -> None:
        missing = [s.value for s in Stage if s not in prompts]
        if missing:
            raise MissingStagePrompt(f"no prompt registered for: {', '.join(missing)}")
        self._prompts = dict(prompts)
        self.version = version
        self.config_hash = self._hash()

    def _hash(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.version).encode())
        for stage in Stage:
            p = self._prompts[stage]
            h.update(f"{stage.value}\x1f{p.task_description}\x1f{p.speaking_rules}\x1f{p.criteria}\x1e".encode())
        return h.hexdigest()[:16]

    def get(self, stage: Stage) -> StagePrompt:
        try:
            return self._prompts[stage]
        except KeyError:
            raise MissingStagePrompt(stage.value) from None

    def criteria_text(self) -> str:
        lines = []
        for stage in Stage:
            p = self._prompts[stage]
            if p.criteria:
                lines.append(f"{stage.value}: {p.criteria}")
        return "\n".join(lines)


DEFAULT_STAGE_CONFIG = """\
[meta]
version = 1

[RapportBuilding]
task_description = Open the conversation gently. Exchange light remarks about the user's
    day and share a small detail about yourself to make it easy for them to talk.
speaking_rules = Keep sentences short and friendly. No probing questions yet. Mirror the
    user's tone and always respond with warmth.
criteria = Recommend while the conversation is still warming up: first couple of turns,
    small talk, no substantial disclosure yet.

[Exploration]
task_description = Help the user unpack their day. Ask about events, feelings, thoughts,
    and difficulties, mixing open questions with specific follow-ups so they stay in
    control of where the conversation goes.
speaking_rules = One question at a time. Acknowledge what the user said before asking
    more. Never judge, diagnose, or advise medication.
criteria = Recommend once the user has started sharing concrete events or feelings and
    there is still material worth unpacking.

[WrapUp]
task_description = Bring the conversation to a close. Check whether anything important is
    left unsaid, then reflect back the main thread of the day.
speaking_rules = Stay receptive to any last topic. Thank the user for sharing. Keep the
    closing brief.
criteria = Recommend when the user signals they are done or wants to say goodbye.

[SensitiveTopic]
task_description = The user mentioned self-harm or suicide. First acknowledge their pain
    and respond with care. Then gently ask how strong and how concrete these thoughts
    are. If they describe intense or specific plans, encourage them to seek help right
    away at a hospital or through the local helpline.
speaking_rules = Lead with empathy, never alarm. No lectures. Short, steady sentences.
    Do not change the subject until the user is ready.
criteria = Recommend whenever the user expresses self-harm or suicidal thoughts, however
    indirectly.
"""


def _parse(parser: configparser.ConfigParser, source: str) -> PromptRegistry:
    version = 1
    if parser.has_section("meta"):
        version = parser.getint("meta", "version", fallback=1)
    prompts: dict[Stage, StagePrompt] = {}
    for section in parser.sections():
        if section == "meta":
            continue
        try:
            stage = Stage(section)
        except ValueError:
            raise ConfigError(f"{source}: unknown stage section [{section}]") from None
        body = parser[section]
        if "task_description" not in body or "speaking_rules" not in body:
            raise ConfigError(f"{source}: [{section}] needs task_description and speaking_rules")
        prompts[stage] = StagePrompt(
            stage=stage,
            task_description=" ".join(body["task_description"].split()),
            speaking_rules=" ".join(body["speaking_rules"].split()),
            criteria=" ".join(body.get("criteria", "").split()),
        )
    return PromptRegistry(prompts, version=version)


def load_stage_config(path: str | Path) -> PromptRegistry:
    parser = configparser.ConfigParser(interpolation=None)
    if not parser.read(path, encoding="utf-8"):
        raise ConfigError(f"stage config not found: {path}")
    return _parse(parser, str(path))


def default_registry() -> PromptRegistry:
    parser = configparser.ConfigParser(interpolation=None)
    parser.read_file(io.StringIO(DEFAULT_STAGE_CONFIG))
    return _parse(parser, "<default>")


def write_default_config(path: str | Path) -> None:
    Path(path).write_text(DEFAULT_STAGE_CONFIG, encoding="utf-8")
