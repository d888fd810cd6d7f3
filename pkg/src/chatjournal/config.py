"""Deployment configuration: one INI file plus environment overrides.

``chatjournal init`` writes a complete config tree (service config, stage
prompts, lexicon, demo script); ``build_runtime`` turns a config file
into a wired service, token registry, and optional webhook notifier.

Environment overrides: CHATJOURNAL_PORT, CHATJOURNAL_DATA_DIR,
CHATJOURNAL_PROVIDER_URL, CHATJOURNAL_PROVIDER_TOKEN (credential itself),
CHATJOURNAL_WEBHOOK_URL.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .api.auth import TokenRegistry
from .api.notifications import WebhookNotifier
from .engine.prompts import load_stage_config, write_default_config
from .errors import ConfigError
from .gateway import Gateway, RemoteConfig, RemoteProvider, load_script
from .safety.lexicon import DEFAULT_LEXICON, dump_lexicon, load_lexicon
from .safety.suspension import SuspensionPolicy
from .service import JournalService
from .store.log import FileEventLog, MemoryEventLog

DEFAULT_SERVICE_CONFIG = """\
[service]
port = 8000
busy_policy = wait
# directory for the event log segments; leave empty for an in-memory store
data_dir = data
# comma-separated origins allowed to call the API from a browser; empty disables CORS
cors_origins = *

[provider]
# kind: scripted (deterministic rule file) or remote (chat-completion endpoint)
kind = scripted
script_path = script.ini
base_url =
token_env = CHATJOURNAL_PROVIDER_TOKEN
model = gpt-4

[policy]
trigger_count = 2
window_days = 7
suspension_days = 3

[paths]
stage_config = stages.ini
lexicon = lexicon.txt

[webhook]
url =
monitor_base_url =

[auth]
# token = role:principal_id[:assigned participants, comma separated]
demo-operator = operator:ops
demo-clinician = clinician:dr-demo:p-000001,p-000002
demo-patient = patient:p-000001
"""

DEMO_SCRIPT = """\
# Deterministic demo script: drives the whole pipeline without a remote provider.
# Needles must not collide with the stage-criteria text that rides along in
# every analyzer prompt, so triggers use phrases the criteria never contain.
[rule:analyzer-first-turn]
match_contains = [dialogue-analyzer]
    Current stage: none yet
response = {"summary": "opening small talk", "next_stage": "RapportBuilding"}

[rule:analyzer-wrap]
match_contains = [dialogue-analyzer]
    goodbye for now
response = {"summary": "saying goodbye", "next_stage": "WrapUp"}

[rule:analyzer]
match_contains = [dialogue-analyzer]
response = {"summary": "talking through the day", "next_stage": "Exploration"}

[rule:responder-sensitive]
match_contains = [response-generator]
    Stage: SensitiveTopic
response = That sounds really heavy, and I'm glad you told me. How strong are these
    thoughts right now?

[rule:responder]
match_contains = [response-generator]
response = Thanks for sharing that. What else happened, and how did it feel?

[rule:journal-summary]
match_contains = [journal-summary]
response = Today I wrote about my day. (<<digest8>>)

[rule:insight]
match_contains = [insight-summary
response = Across this period the entries describe everyday events in a steady mood.

[fallback]
response = I hear you.
"""


@dataclass
class Runtime:
    service: JournalService
    tokens: TokenRegistry
    notifier: Optional[WebhookNotifier]
    port: int
    cors_origins: list[str]


def write_default_tree(directory: str | Path) -> Path:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    (root / "config.ini").write_text(DEFAULT_SERVICE_CONFIG, encoding="utf-8")
    write_default_config(root / "stages.ini")
    dump_lexicon(DEFAULT_LEXICON, root / "lexicon.txt")
    (root / "script.ini").write_text(DEMO_SCRIPT, encoding="utf-8")
    return root


def build_runtime(config_path: str | Path) -> Runtime:
    config_path = Path(config_path)
    parser = configparser.ConfigParser(interpolation=None)
    if not parser.read(config_path, encoding="utf-8"):
        raise ConfigError(f"config file not found: {config_path}")
    base = config_path.parent

    def resolve(raw: str) -> Path:
        path = Path(raw)
        return path if path.is_absolute() else base / path

    port = int(os.environ.get("CHATJOURNAL_PORT", parser.getint("service", "port", fallback=8000)))

    data_dir = os.environ.get("CHATJOURNAL_DATA_DIR", parser.get("service", "data_dir", fallback=""))
    log = FileEventLog(resolve(data_dir)) if data_dir else MemoryEventLog()

    stage_path = parser.get("paths", "stage_config", fallback="")
    registry = load_stage_config(resolve(stage_path)) if stage_path else None

    lexicon_path = parser.get("paths", "lexicon", fallback="")
    lexicon = load_lexicon(resolve(lexicon_path)) if lexicon_path else DEFAULT_LEXICON

    kind = parser.get("provider", "kind", fallback="scripted")
    if kind == "remote":
        base_url = os.environ.get(
            "CHATJOURNAL_PROVIDER_URL", parser.get("provider", "base_url", fallback="")
        )
        if not base_url:
            raise ConfigError("remote provider requires provider.base_url or CHATJOURNAL_PROVIDER_URL")
        provider = RemoteProvider(
            RemoteConfig(
                base_url=base_url,
                token_env=parser.get("provider", "token_env", fallback="CHATJOURNAL_PROVIDER_TOKEN"),
            )
        )
    elif kind == "scripted":
        provider = load_script(resolve(parser.get("provider", "script_path", fallback="script.ini")))
    else:
        raise ConfigError(f"unknown provider kind: {kind}")

    policy = SuspensionPolicy(
        trigger_count=parser.getint("policy", "trigger_count", fallback=2),
        window_days=parser.getint("policy", "window_days", fallback=7),
        suspension_days=parser.getint("policy", "suspension_days", fallback=3),
    )

    service = JournalService(
        log=log,
        gateway=Gateway(provider),
        registry=registry,
        lexicon=lexicon,
        policy=policy,
        busy_policy=parser.get("service", "busy_policy", fallback="wait"),
    )

    tokens = TokenRegistry.from_entries(dict(parser.items("auth")) if parser.has_section("auth") else {})

    webhook_url = os.environ.get("CHATJOURNAL_WEBHOOK_URL", parser.get("webhook", "url", fallback=""))
    notifier = (
        WebhookNotifier(
            service,
            webhook_url,
            monitor_base_url=parser.get("webhook", "monitor_base_url", fallback=""),
        )
        if webhook_url
        else None
    )
    cors_raw = parser.get("service", "cors_origins", fallback="")
    cors_origins = [o.strip() for o in cors_raw.split(",") if o.strip()]
    return Runtime(service=service, tokens=tokens, notifier=notifier, port=port, cors_origins=cors_origins)
