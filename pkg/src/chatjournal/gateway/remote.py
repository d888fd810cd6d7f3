"""Remote chat-completion provider.

Speaks the common chat-completion wire format: a role-tagged message
array in, a choice array out. The endpoint, model, and credential source
are configuration, so any compatible service works. Transient failures
are retried with exponential backoff up to a budget, then surface as
ProviderUnavailable.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import httpx

from ..errors import ConfigError, ProviderUnavailable
from .base import Generation, GenerationParams, PromptSegment

RETRYABLE_STATUS = {408, 409, 429, 500, 502, 503, 504}


@dataclass(frozen=True)
class RemoteConfig:
    base_url: str
    token_env: str = "CHATJOURNAL_PROVIDER_TOKEN"
    completions_path: str = "/chat/completions"
    max_retries: int = 3
    backoff_base_s: float = 0.5
    timeout_s: float = 30.0


class RemoteProvider:
    name = "remote"

    def __init__(
        self,
        config: RemoteConfig,
        client: httpx.Client | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self._config = config
        self._client = client or httpx.Client(timeout=config.timeout_s)
        self._sleep = sleep

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self._config.token_env, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def complete(self, segments: Sequence[PromptSegment], params: GenerationParams) -> Generation:
        body = {
            "model": params.model_name,
            "messages": [{"role": s.role, "content": s.text} for s in segments],
            "temperature": params.temperature,
            "presence_penalty": params.presence_penalty,
            "frequency_penalty": params.frequency_penalty,
            "max_tokens": params.max_output_units,
        }
        url = self._config.base_url.rstrip("/") + self._config.completions_path
        last_error: str = "no attempt made"
        for attempt in range(self._config.max_retries + 1):
            if attempt:
                self._sleep(self._config.backoff_base_s * (2 ** (attempt - 1)))
            try:
                response = self._client.post(url, json=body, headers=self._headers())
            except httpx.HTTPError as exc:
                last_error = f"transport error: {exc}"
                continue
            if response.status_code in RETRYABLE_STATUS:
                last_error = f"status {response.status_code}"
                continue
            if response.status_code != 200:
                raise ProviderUnavailable(f"provider rejected request: status {response.status_code}")
            try:
                data = response.json()
                text = data["choices"][0]["message"]["content"]
            except (KeyError, IndexError, ValueError) as exc:
                raise ProviderUnavailable(f"malformed provider response: {exc}") from exc
            usage = {k: v for k, v in data.get("usage", {}).items() if isinstance(v, int)}
            return Generation(text=text, usage=usage)
        raise ProviderUnavailable(f"retry budget exhausted: {last_error}")


def remote_from_env(base_url: str | None = None) -> RemoteProvider:
    url = base_url or os.environ.get("CHATJOURNAL_PROVIDER_URL", "")
    if not url:
        raise ConfigError("remote provider requires a base URL")
    return RemoteProvider(RemoteConfig(base_url=url))
