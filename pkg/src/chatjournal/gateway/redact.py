"""Identifier redaction for audit logs and exports.

Pattern-based: phone-like digit runs, email addresses, and a configured
list of names are replaced with placeholders. Applying the redactor to
already-redacted text changes nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

PHONE_PLACEHOLDER = "[REDACTED-NUMBER]"
EMAIL_PLACEHOLDER = "[REDACTED-EMAIL]"
NAME_PLACEHOLDER = "[REDACTED-NAME]"

# seven or more digits allowing separators, the shape of phone numbers
_PHONE_RE = re.compile(r"\+?\d(?:[\s\-.]?\d){6,}")
_EMAIL_RE = re.compile(r"[\w.+-]+@[\w-]+\.[\w.-]+")


@dataclass(frozen=True)
class RedactionRules:
    names: tuple[str, ...] = ()
    extra_patterns: tuple[str, ...] = ()


def redact_for_audit(text: str, rules: RedactionRules | None = None) -> str:
    rules = rules or RedactionRules()
    out = _EMAIL_RE.sub(EMAIL_PLACEHOLDER, text)
    out = _PHONE_RE.sub(PHONE_PLACEHOLDER, out)
    for pattern in rules.extra_patterns:
        out = re.sub(pattern, PHONE_PLACEHOLDER, out)
    for name in rules.names:
        if name:
            out = re.sub(rf"(?i)\b{re.escape(name)}\b", NAME_PLACEHOLDER, out)
    return out
