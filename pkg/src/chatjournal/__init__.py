"""Conversation-driven journaling platform for clinical mental-health settings."""

__version__ = "0.1.0"
