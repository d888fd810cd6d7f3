from .base import (
    AuditRecord,
    AuditSink,
    Gateway,
    Generation,
    GenerationParams,
    PromptSegment,
    Provider,
)
from .redact import RedactionRules, redact_for_audit
from .remote import RemoteConfig, RemoteProvider, remote_from_env
from .scripted import ScriptRule, ScriptedProvider, load_script, render_response

__all__ = [
    "AuditRecord",
    "AuditSink",
    "Gateway",
    "Generation",
    "GenerationParams",
    "PromptSegment",
    "Provider",
    "RedactionRules",
    "redact_for_audit",
    "RemoteConfig",
    "RemoteProvider",
    "remote_from_env",
    "ScriptRule",
    "ScriptedProvider",
    "load_script",
    "render_response",
]
