/**
 * Reader for the newline-delimited JSON monitoring stream.
 *
 * One connection at a time; the reader remembers the last event id it
 * handed out, so `resume()` after a disconnect picks up exactly where it
 * stopped (the server replays everything past the cursor, in order).
 */

import type { DomainEventView } from './types.js';

export function parseNdjsonChunk(buffer: string, chunk: string): { events: DomainEventView[]; rest: string } {
  const combined = buffer + chunk;
  const lines = combined.split('\n');
  const rest = lines.pop() ?? '';
  const events: DomainEventView[] = [];
  for (const line of lines) {
    const trimmed = line.trim();
    if (!trimmed) continue;
    events.push(JSON.parse(trimmed) as DomainEventView);
  }
  return { events, rest };
}

export class MonitorStream {
  private cursor: number;

  constructor(
    private readonly makeUrl: (cursor: number) => string,
    private readonly token: string,
    startCursor = 0,
  ) {
    this.cursor = startCursor;
  }

  get position(): number {
    return this.cursor;
  }

  /** Read one connection's worth of events, advancing the cursor. */
  async readOnce(): Promise<DomainEventView[]> {
    const response = await fetch(this.makeUrl(this.cursor), {
      headers: { Authorization: `Bearer ${this.token}` },
    });
    if (!response.ok || !response.body) {
      throw new Error(`stream failed: ${response.status}`);
    }
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = '';
    const events: DomainEventView[] = [];
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      const parsed = parseNdjsonChunk(buffer, decoder.decode(value, { stream: true }));
      buffer = parsed.rest;
      for (const event of parsed.events) {
        if (event.event_id <= this.cursor) {
          throw new Error(`stream replayed event ${event.event_id} at cursor ${this.cursor}`);
        }
        this.cursor = event.event_id;
        events.push(event);
      }
    }
    const tail = buffer.trim();
    if (tail) {
      const event = JSON.parse(tail) as DomainEventView;
      this.cursor = event.event_id;
      events.push(event);
    }
    return events;
  }

  /** Reconnect after a drop: same contract, resumes past the last id seen. */
  resume(): Promise<DomainEventView[]> {
    return this.readOnce();
  }
}
