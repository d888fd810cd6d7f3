"""Command-line entry points."""

from __future__ import annotations

import json
import random
from pathlib import Path

import click

from .api import create_app
from .config import build_runtime, write_default_tree
from .core.serialize import canonical_dumps
from .gateway import RedactionRules, redact_for_audit


@click.group()
def main() -> None:
    """Conversation-driven journaling service."""


@main.command()
@click.argument("directory", type=click.Path(file_okay=False), default="config")
def init(directory: str) -> None:
    """Write a complete default configuration tree."""
    root = write_default_tree(directory)
    click.echo(f"wrote config tree under {root}/ (config.ini, stages.ini, lexicon.txt, script.ini)")


@main.command()
@click.option("--config", "-c", "config_path", default="config/config.ini", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(config_path: str, host: str) -> None:
    """Run the HTTP API."""
    import uvicorn

    runtime = build_runtime(config_path)
    app = create_app(
        runtime.service, runtime.tokens, notifier=runtime.notifier, cors_origins=runtime.cors_origins
    )
    uvicorn.run(app, host=host, port=runtime.port)


@main.command()
@click.option("--config", "-c", "config_path", default="config/config.ini", show_default=True)
@click.option("--participants", "-n", default=3, show_default=True)
@click.option("--days", "-d", default=5, show_default=True)
@click.option("--seed", "-s", default=7, show_default=True)
def simulate(config_path: str, participants: int, days: int, seed: int) -> None:
    """Drive scripted journaling sessions into the store and print metrics."""
    runtime = build_runtime(config_path)
    service = runtime.service
    rng = random.Random(seed)
    lines = [
        "today was okay",
        "school felt long",
        "talked with a friend at lunch",
        "walked home the long way",
        "dinner was quiet",
        "that is all, goodbye for now",
    ]
    pids = []
    for i in range(participants):
        profile = service.register_participant(
            alias=f"sim-{i + 1}", age=16 + i % 4, gender="F" if i % 2 else "M", cesdc_score=rng.randrange(0, 35)
        )
        pids.append(profile.participant_id)
    sessions = 0
    for _ in range(days):
        for pid in pids:
            if rng.random() < 0.25:
                continue  # missed day
            service.submit_assessment(pid, [rng.randrange(0, 2) for _ in range(9)], "")
            session = service.create_session(pid)
            if session.mode.value != "Standard":
                continue
            for _ in range(rng.randrange(2, 5)):
                service.post_patient_message(session.session_id, rng.choice(lines))
            service.close_session(session.session_id)
            sessions += 1
    metrics = service.engagement()
    click.echo(f"simulated {sessions} sessions for {participants} participants")
    click.echo(canonical_dumps(metrics.to_json()))


@main.command()
@click.option("--config", "-c", "config_path", default="config/config.ini", show_default=True)
@click.argument("participant_id")
@click.argument("target", type=click.Path(file_okay=False))
@click.option("--redact/--no-redact", default=False, show_default=True)
def export(config_path: str, participant_id: str, target: str, redact: bool) -> None:
    """Export one participant's events as a JSON-lines archive."""
    runtime = build_runtime(config_path)
    redactor = (lambda text: redact_for_audit(text, RedactionRules())) if redact else None
    archive = runtime.service.export(participant_id, Path(target), redactor)
    click.echo(f"archive written to {archive}")


@main.command()
@click.option("--config", "-c", "config_path", default="config/config.ini", show_default=True)
@click.option("--participant", "-p", default=None)
def metrics(config_path: str, participant: str | None) -> None:
    """Print engagement metrics for the store (optionally one participant)."""
    runtime = build_runtime(config_path)
    out = runtime.service.engagement(participant)
    click.echo(json.dumps(out.to_json(), indent=2, ensure_ascii=False))


if __name__ == "__main__":
    main()
