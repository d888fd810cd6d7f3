"""Outbound alert delivery over a webhook.

Pending alerts are pushed as JSON with a monitoring deep-link attached.
Delivery is at-least-once: a failed push retries with backoff and the
final state lands on the alert's delivery status, so consumers must be
idempotent on alert_id.
"""

from __future__ import annotations

import time
from typing import Callable, Optional

import httpx

from ..core.serialize import alert_to_json
from ..core.types import DeliveryState
from ..service import JournalService

Transport = Callable[[str, dict], int]  # (url, json body) -> status code


def _default_transport(url: str, body: dict) -> int:
    return httpx.post(url, json=body, timeout=10.0).status_code


class WebhookNotifier:
    def __init__(
        self,
        service: JournalService,
        webhook_url: str,
        monitor_base_url: str = "",
        transport: Optional[Transport] = None,
        max_retries: int = 3,
        backoff_base_s: float = 0.5,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.service = service
        self.webhook_url = webhook_url
        self.monitor_base_url = monitor_base_url.rstrip("/")
        self.transport = transport or _default_transport
        self.max_retries = max_retries
        self.backoff_base_s = backoff_base_s
        self.sleep = sleep

    def _monitor_link(self, alert) -> str:
        base = self.monitor_base_url or "http://localhost:8000"
        if alert.session_id:
            return f"{base}/participants/{alert.participant_id}/stream?session={alert.session_id}"
        return f"{base}/participants/{alert.participant_id}/stream"

    def deliver(self, alert) -> DeliveryState:
        body = dict(alert_to_json(alert), monitor_url=self._monitor_link(alert))
        last_status = 0
        for attempt in range(self.max_retries + 1):
            if attempt:
                self.sleep(self.backoff_base_s * (2 ** (attempt - 1)))
            try:
                last_status = self.transport(self.webhook_url, body)
            except Exception:
                last_status = 0
                continue
            if 200 <= last_status < 300:
                self.service.set_alert_delivery(alert.alert_id, DeliveryState.DELIVERED.value)
                return DeliveryState.DELIVERED
        self.service.set_alert_delivery(
            alert.alert_id, DeliveryState.FAILED.value, reason=f"webhook status {last_status}"
        )
        return DeliveryState.FAILED

    def drain(self) -> int:
        """Deliver every alert still pending; returns how many were attempted."""
        pending = [
            a for a in self.service.state.alerts() if a.delivery_status.state is DeliveryState.PENDING
        ]
        for alert in pending:
            self.deliver(alert)
        return len(pending)
