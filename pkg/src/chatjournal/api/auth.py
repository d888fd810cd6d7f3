"""Bearer-token auth and role scoping.

Three principal kinds: patients (own resources only), clinicians (their
assigned participants plus the safety console), and operators
(everything). Tokens are opaque strings mapped to principals in
configuration; there is no identity provider dependency.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import AuthFailure, ScopeDenied

ROLE_PATIENT = "patient"
ROLE_CLINICIAN = "clinician"
ROLE_OPERATOR = "operator"


@dataclass(frozen=True)
class AuthContext:
    role: str
    principal_id: str
    assigned_participants: frozenset[str] = field(default_factory=frozenset)

    def label(self) -> str:
        return f"{self.role}:{self.principal_id}"

    # -- scope checks ----------------------------------------------------
    def can_access_participant(self, participant_id: str) -> bool:
        if self.role == ROLE_OPERATOR:
            return True
        if self.role == ROLE_CLINICIAN:
            return participant_id in self.assigned_participants
        return participant_id == self.principal_id

    def require_participant(self, participant_id: str) -> None:
        if not self.can_access_participant(participant_id):
            raise ScopeDenied(f"{self.label()} cannot access participant {participant_id}")

    def require_role(self, *roles: str) -> None:
        if self.role not in roles:
            raise ScopeDenied(f"{self.label()} lacks required role ({'/'.join(roles)})")

    def require_patient_self(self, participant_id: str) -> None:
        """Patient-only write paths: the patient themselves, or an operator."""
        if self.role == ROLE_OPERATOR:
            return
        if self.role != ROLE_PATIENT or participant_id != self.principal_id:
            raise ScopeDenied(f"{self.label()} cannot act as participant {participant_id}")


class TokenRegistry:
    def __init__(self, tokens: dict[str, AuthContext] | None = None) -> None:
        self._tokens = dict(tokens or {})

    def add(self, token: str, context: AuthContext) -> None:
        self._tokens[token] = context

    def authenticate(self, bearer: str | None) -> AuthContext:
        if not bearer:
            raise AuthFailure("missing bearer token")
        context = self._tokens.get(bearer)
        if context is None:
            raise AuthFailure("unknown token")
        return context

    @classmethod
    def from_entries(cls, entries: dict[str, str]) -> "TokenRegistry":
        """Entries map token -> ``role:principal_id[:assigned,assigned...]``."""
        registry = cls()
        for token, spec in entries.items():
            parts = spec.split(":")
            if len(parts) < 2 or parts[0] not in (ROLE_PATIENT, ROLE_CLINICIAN, ROLE_OPERATOR):
                raise ValueError(f"bad auth entry for token {token!r}: {spec!r}")
            assigned = frozenset(p for p in parts[2].split(",") if p) if len(parts) > 2 else frozenset()
            registry.add(token, AuthContext(parts[0], parts[1], assigned))
        return registry
