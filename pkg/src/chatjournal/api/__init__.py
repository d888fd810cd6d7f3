from .app import create_app
from .auth import ROLE_CLINICIAN, ROLE_OPERATOR, ROLE_PATIENT, AuthContext, TokenRegistry
from .notifications import WebhookNotifier

__all__ = [
    "create_app",
    "ROLE_CLINICIAN",
    "ROLE_OPERATOR",
    "ROLE_PATIENT",
    "AuthContext",
    "TokenRegistry",
    "WebhookNotifier",
]
