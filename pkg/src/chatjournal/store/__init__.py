from . import events
from .events import DomainEvent, event
from .export import events_for_participant, export_participant, import_archive
from .log import EventLog, FileEventLog, MemoryEventLog
from .state import StateView, rebuild

__all__ = [
    "events",
    "DomainEvent",
    "event",
    "events_for_participant",
    "export_participant",
    "import_archive",
    "EventLog",
    "FileEventLog",
    "MemoryEventLog",
    "StateView",
    "rebuild",
]
