"""HTTP boundary: patient app endpoints, clinician dashboard endpoints,
the live monitoring stream, and the safety console.

Handlers are stateless shims over the service; per-session serialization
and transactional writes happen below this layer. State-changing POSTs
honor an ``Idempotency-Key`` header: a retried request replays the stored
response instead of re-executing.
"""

from __future__ import annotations

import threading
import time as _time
from datetime import datetime, timezone
from typing import Iterator, Optional

from fastapi import Depends, FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse

from ..core.serialize import (
    alert_to_json,
    assessment_to_json,
    journal_entry_to_json,
    message_to_json,
    participant_to_json,
    session_to_json,
)
from ..errors import (
    AuthFailure,
    Busy,
    CalmingModeActive,
    ChatJournalError,
    ConflictError,
    DateOutOfRange,
    GateRequired,
    NotFound,
    ParticipantSuspended,
    PromptTooLarge,
    ProviderUnavailable,
    ScopeDenied,
    SessionClosed,
)
from ..insights import Period
from ..service import JournalService
from .auth import ROLE_CLINICIAN, ROLE_OPERATOR, AuthContext, TokenRegistry
from .notifications import WebhookNotifier
from .schemas import (
    AdherenceCheckIn,
    AssessmentIn,
    CloseIn,
    MessageIn,
    ParticipantIn,
    SessionIn,
    SummaryEditIn,
    SuspendIn,
)

_STATUS_OF = {
    AuthFailure: 401,
    ScopeDenied: 403,
    NotFound: 404,
    GateRequired: 409,
    SessionClosed: 409,
    CalmingModeActive: 409,
    ConflictError: 409,
    PromptTooLarge: 413,
    ParticipantSuspended: 423,
    Busy: 429,
    ProviderUnavailable: 503,
    DateOutOfRange: 400,
}


class _IdempotencyCache:
    def __init__(self) -> None:
        self._seen: dict[tuple[str, str, str], tuple[int, str]] = {}
        self._lock = threading.Lock()

    def get(self, who: str, path: str, key: str) -> Optional[tuple[int, str]]:
        with self._lock:
            return self._seen.get((who, path, key))

    def put(self, who: str, path: str, key: str, status: int, body: str) -> None:
        with self._lock:
            self._seen[(who, path, key)] = (status, body)


def _parse_period(start: Optional[str], end: Optional[str]) -> Optional[Period]:
    if not start or not end:
        return None

    def parse(raw: str) -> datetime:
        dt = datetime.fromisoformat(raw)
        return dt if dt.tzinfo else dt.replace(tzinfo=timezone.utc)

    return Period(parse(start), parse(end))


def create_app(
    service: JournalService,
    tokens: TokenRegistry,
    notifier: Optional[WebhookNotifier] = None,
    cors_origins: Optional[list[str]] = None,
) -> FastAPI:
    app = FastAPI(title="chatjournal", version="0.1.0")
    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["Authorization", "Content-Type", "Idempotency-Key"],
        )
    idempotency = _IdempotencyCache()

    def auth(authorization: Optional[str] = Header(default=None)) -> AuthContext:
        if authorization and authorization.lower().startswith("bearer "):
            return tokens.authenticate(authorization[7:])
        return tokens.authenticate(None)

    @app.exception_handler(ChatJournalError)
    async def domain_error_handler(request: Request, exc: ChatJournalError):
        status = _STATUS_OF.get(type(exc), 500)
        headers = {"Retry-After": "1"} if isinstance(exc, (ProviderUnavailable, Busy)) else None
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc)}},
            headers=headers,
        )

    def replay_or_run(ctx: AuthContext, request: Request, key: Optional[str], run):
        """Idempotent POST helper: same principal + path + key replays the
        first response."""
        path = request.url.path
        if key:
            cached = idempotency.get(ctx.label(), path, key)
            if cached:
                status, body = cached
                return Response(content=body, status_code=status, media_type="application/json")
        payload = run()
        response = JSONResponse(content=payload)
        if key:
            idempotency.put(ctx.label(), path, key, response.status_code, response.body.decode("utf-8"))
        return response

    # -- participants -----------------------------------------------------
    @app.post("/participants")
    def register_participant(
        body: ParticipantIn,
        request: Request,
        ctx: AuthContext = Depends(auth),
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        ctx.require_role(ROLE_OPERATOR)

        def run():
            profile = service.register_participant(
                alias=body.alias,
                age=body.age,
                gender=body.gender,
                cesdc_score=body.cesdc_score,
                timezone_name=body.timezone,
                enrollment_date=body.enrollment_date,
                participant_id=body.participant_id,
            )
            return {"participant": participant_to_json(profile)}

        return replay_or_run(ctx, request, idempotency_key, run)

    @app.get("/participants/{participant_id}")
    def get_participant(participant_id: str, ctx: AuthContext = Depends(auth)):
        ctx.require_participant(participant_id)
        return {"participant": participant_to_json(service.participant(participant_id))}

    @app.get("/participants")
    def list_participants(ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        profiles = [
            p for p in service.state.participants() if ctx.can_access_participant(p.participant_id)
        ]
        return {"participants": [participant_to_json(p) for p in profiles]}

    # -- assessment & sessions ------------------------------------------------
    @app.post("/assessments")
    def submit_assessment(
        body: AssessmentIn,
        request: Request,
        ctx: AuthContext = Depends(auth),
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        ctx.require_patient_self(body.participant_id)

        def run():
            assessment, verdict = service.submit_assessment(body.participant_id, body.items, body.open_answer)
            return {"assessment": assessment_to_json(assessment), "verdict": verdict.value}

        return replay_or_run(ctx, request, idempotency_key, run)

    @app.post("/sessions")
    def create_session(
        body: SessionIn,
        request: Request,
        ctx: AuthContext = Depends(auth),
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        ctx.require_patient_self(body.participant_id)

        def run():
            session = service.create_session(body.participant_id)
            return {"session": session_to_json(session), "mode": session.mode.value}

        return replay_or_run(ctx, request, idempotency_key, run)

    def _session_scope(session_id: str, ctx: AuthContext):
        session = service.session(session_id)
        ctx.require_participant(session.participant_id)
        return session

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str, ctx: AuthContext = Depends(auth)):
        session = _session_scope(session_id, ctx)
        return {"session": session_to_json(session)}

    @app.post("/sessions/{session_id}/messages")
    def post_message(
        session_id: str,
        body: MessageIn,
        request: Request,
        ctx: AuthContext = Depends(auth),
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        session = _session_scope(session_id, ctx)
        ctx.require_patient_self(session.participant_id)

        def run():
            result = service.post_patient_message(session_id, body.text)
            latest = result.session.latest_summary
            return {
                "assistant_message": message_to_json(result.assistant_message),
                "stage": result.stage.value,
                "session": session_to_json(result.session),
                "summary": journal_entry_to_json(latest) if latest else None,
                "suspended": result.suspended,
            }

        return replay_or_run(ctx, request, idempotency_key, run)

    @app.put("/sessions/{session_id}/summary")
    def edit_summary(session_id: str, body: SummaryEditIn, ctx: AuthContext = Depends(auth)):
        session = _session_scope(session_id, ctx)
        ctx.require_patient_self(session.participant_id)
        entry = service.edit_summary(session_id, body.text)
        return {"entry": journal_entry_to_json(entry)}

    @app.post("/sessions/{session_id}/close")
    def close_session(
        session_id: str,
        body: CloseIn,
        request: Request,
        ctx: AuthContext = Depends(auth),
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        session = _session_scope(session_id, ctx)
        ctx.require_patient_self(session.participant_id)

        def run():
            closed = service.close_session(session_id, body.reflection)
            return {"session": session_to_json(closed)}

        return replay_or_run(ctx, request, idempotency_key, run)

    # -- dashboard reads ----------------------------------------------------
    @app.get("/participants/{participant_id}/journals")
    def journals(participant_id: str, ctx: AuthContext = Depends(auth)):
        ctx.require_participant(participant_id)
        return {"journals": service.journal_cards(participant_id)}

    @app.get("/participants/{participant_id}/engagement")
    def engagement(
        participant_id: str,
        ctx: AuthContext = Depends(auth),
        start: Optional[str] = Query(default=None),
        end: Optional[str] = Query(default=None),
    ):
        ctx.require_participant(participant_id)
        metrics = service.engagement(participant_id, period=_parse_period(start, end))
        return {"engagement": metrics.to_json()}

    @app.get("/participants/{participant_id}/insights")
    def insights(
        participant_id: str,
        ctx: AuthContext = Depends(auth),
        start: Optional[str] = Query(default=None),
        end: Optional[str] = Query(default=None),
        top_n: int = Query(default=50, ge=1),
    ):
        ctx.require_participant(participant_id)
        bundle = service.insights(participant_id, period=_parse_period(start, end), top_n=top_n)
        return {"insights": bundle.to_json()}

    @app.get("/participants/{participant_id}/wordcloud.csv")
    def wordcloud_csv(participant_id: str, ctx: AuthContext = Depends(auth)):
        ctx.require_participant(participant_id)
        bundle = service.insights(participant_id)
        return Response(content=bundle.word_frequencies.to_csv(), media_type="text/csv")

    # -- monitoring stream ------------------------------------------------------
    @app.get("/participants/{participant_id}/stream")
    def stream(
        participant_id: str,
        ctx: AuthContext = Depends(auth),
        cursor: int = Query(default=0, ge=0),
        limit: Optional[int] = Query(default=None, ge=1),
        wait_s: float = Query(default=0.0, ge=0.0, le=30.0),
    ):
        ctx.require_participant(participant_id)
        service.participant(participant_id)

        def gen() -> Iterator[str]:
            sent = 0
            position = cursor
            deadline = _time.monotonic() + wait_s
            while True:
                for event in service.events_after(position, participant_id):
                    position = max(position, event.event_id)
                    yield event.to_line() + "\n"
                    sent += 1
                    if limit is not None and sent >= limit:
                        return
                if _time.monotonic() >= deadline:
                    return
                _time.sleep(0.05)

        return StreamingResponse(gen(), media_type="application/x-ndjson")

    # -- safety console ------------------------------------------------------------
    @app.get("/alerts")
    def alerts(ctx: AuthContext = Depends(auth), all: int = Query(default=0)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        rows = service.state.alerts() if all else service.pending_alerts()
        rows = [a for a in rows if ctx.can_access_participant(a.participant_id)]
        return {"alerts": [alert_to_json(a) for a in rows]}

    @app.post("/alerts/{alert_id}/ack")
    def ack_alert(alert_id: str, ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        alert = service.state.alert(alert_id)
        if alert is None:
            raise NotFound(f"unknown alert {alert_id}")
        ctx.require_participant(alert.participant_id)
        return {"alert": alert_to_json(service.acknowledge_alert(alert_id, by=ctx.principal_id))}

    @app.get("/review-queue")
    def review_queue(ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        sessions = [
            s for s in service.review_queue() if ctx.can_access_participant(s.participant_id)
        ]
        return {"sessions": [session_to_json(s) for s in sessions]}

    @app.post("/participants/{participant_id}/suspend")
    def suspend(participant_id: str, body: SuspendIn, ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        ctx.require_participant(participant_id)
        profile = service.suspend_participant(participant_id, by=ctx.principal_id, days=body.days)
        return {"participant": participant_to_json(profile)}

    @app.post("/participants/{participant_id}/resume")
    def resume(participant_id: str, ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        ctx.require_participant(participant_id)
        profile = service.resume_participant(participant_id, by=ctx.principal_id)
        return {"participant": participant_to_json(profile)}

    @app.post("/participants/{participant_id}/adherence-check")
    def adherence_check(participant_id: str, body: AdherenceCheckIn, ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_CLINICIAN, ROLE_OPERATOR)
        ctx.require_participant(participant_id)
        signal = service.run_adherence_check(participant_id, today=body.today)
        return {"signal": signal.value}

    @app.post("/notifications/drain")
    def drain_notifications(ctx: AuthContext = Depends(auth)):
        ctx.require_role(ROLE_OPERATOR)
        if notifier is None:
            return {"delivered": 0, "configured": False}
        return {"delivered": notifier.drain(), "configured": True}

    @app.get("/health")
    def health():
        return {"status": "ok", "head": service.log.head, "config_hash": service.registry.config_hash}

    return app
