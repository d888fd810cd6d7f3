/**
 * Typed client for the journaling API. Configuration is just a base URL
 * and a bearer token; every verdict (gate, suspension, stage) comes from
 * the server, never from client-side logic.
 */

import type {
  AlertRowView,
  ApiErrorBody,
  AssessmentResponse,
  EngagementView,
  InsightBundleView,
  JournalCardView,
  ParticipantView,
  SessionResponse,
  SessionView,
  SummaryVersionView,
  TurnResponse,
} from './types.js';

export interface ClientConfig {
  baseUrl: string;
  token: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export class ApiClient {
  constructor(private readonly config: ClientConfig) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    idempotencyKey?: string,
  ): Promise<T> {
    const headers: Record<string, string> = {
      Authorization: `Bearer ${this.config.token}`,
    };
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    if (idempotencyKey) headers['Idempotency-Key'] = idempotencyKey;
    const response = await fetch(`${this.config.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = 'http_error';
      let message = `${response.status}`;
      try {
        const parsed = (await response.json()) as ApiErrorBody;
        code = parsed.error.code;
        message = parsed.error.message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  // -- patient flow -----------------------------------------------------
  submitAssessment(
    participantId: string,
    items: number[],
    openAnswer: string,
    idempotencyKey?: string,
  ): Promise<AssessmentResponse> {
    return this.request('POST', '/assessments', {
      participant_id: participantId,
      items,
      open_answer: openAnswer,
    }, idempotencyKey);
  }

  createSession(participantId: string, idempotencyKey?: string): Promise<SessionResponse> {
    return this.request('POST', '/sessions', { participant_id: participantId }, idempotencyKey);
  }

  sendMessage(sessionId: string, text: string, idempotencyKey?: string): Promise<TurnResponse> {
    return this.request('POST', `/sessions/${sessionId}/messages`, { text }, idempotencyKey);
  }

  editSummary(sessionId: string, text: string): Promise<{ entry: SummaryVersionView }> {
    return this.request('PUT', `/sessions/${sessionId}/summary`, { text });
  }

  closeSession(sessionId: string, reflection?: string): Promise<{ session: SessionView }> {
    return this.request('POST', `/sessions/${sessionId}/close`, { reflection: reflection ?? null });
  }

  journals(participantId: string): Promise<{ journals: JournalCardView[] }> {
    return this.request('GET', `/participants/${participantId}/journals`);
  }

  session(sessionId: string): Promise<{ session: SessionView }> {
    return this.request('GET', `/sessions/${sessionId}`);
  }

  // -- clinician dashboard --------------------------------------------------
  participants(): Promise<{ participants: ParticipantView[] }> {
    return this.request('GET', '/participants');
  }

  registerParticipant(body: {
    alias: string;
    age: number;
    gender: string;
    cesdc_score: number;
    timezone?: string;
    enrollment_date?: string;
  }): Promise<{ participant: ParticipantView }> {
    return this.request('POST', '/participants', body);
  }

  engagement(participantId: string, period?: { start: string; end: string }): Promise<{ engagement: EngagementView }> {
    const query = period ? `?start=${encodeURIComponent(period.start)}&end=${encodeURIComponent(period.end)}` : '';
    return this.request('GET', `/participants/${participantId}/engagement${query}`);
  }

  insights(participantId: string, period?: { start: string; end: string }): Promise<{ insights: InsightBundleView }> {
    const query = period ? `?start=${encodeURIComponent(period.start)}&end=${encodeURIComponent(period.end)}` : '';
    return this.request('GET', `/participants/${participantId}/insights${query}`);
  }

  alerts(all = false): Promise<{ alerts: AlertRowView[] }> {
    return this.request('GET', `/alerts${all ? '?all=1' : ''}`);
  }

  acknowledgeAlert(alertId: string): Promise<{ alert: AlertRowView }> {
    return this.request('POST', `/alerts/${alertId}/ack`);
  }

  suspend(participantId: string, days?: number): Promise<{ participant: ParticipantView }> {
    return this.request('POST', `/participants/${participantId}/suspend`, { days: days ?? null });
  }

  resume(participantId: string): Promise<{ participant: ParticipantView }> {
    return this.request('POST', `/participants/${participantId}/resume`);
  }

  streamUrl(participantId: string, cursor: number, opts?: { limit?: number; waitS?: number }): string {
    const params = new URLSearchParams({ cursor: String(cursor) });
    if (opts?.limit !== undefined) params.set('limit', String(opts.limit));
    if (opts?.waitS !== undefined) params.set('wait_s', String(opts.waitS));
    return `${this.config.baseUrl}/participants/${participantId}/stream?${params}`;
  }

  get token(): string {
    return this.config.token;
  }
}
