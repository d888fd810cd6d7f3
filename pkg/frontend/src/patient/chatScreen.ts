/**
 * Journaling chat screen: per-turn request/response, with the editable
 * summary pane that appears once the server has produced the first essay
 * version. Pane visibility is derived from server state (are there any
 * summary versions?), never from counting turns client-side.
 */

import type { SessionView, SummaryVersionView, TurnResponse } from '../api/types.js';
import { el, escapeHtml, formatInstant } from '../render.js';

export interface ChatScreenState {
  session: SessionView;
  sending: boolean;
  draft: string;
  summaryDraft: string | null; // patient's in-progress edit, null when untouched
}

export function chatStateFrom(session: SessionView): ChatScreenState {
  return { session, sending: false, draft: '', summaryDraft: null };
}

export function latestSummary(state: ChatScreenState): SummaryVersionView | null {
  const versions = state.session.summary_versions;
  return versions.length ? versions[versions.length - 1]! : null;
}

export function summaryPaneVisible(state: ChatScreenState): boolean {
  return state.session.summary_versions.length > 0;
}

export function applyTurn(state: ChatScreenState, turn: TurnResponse): ChatScreenState {
  return { ...state, session: turn.session, sending: false, draft: '', summaryDraft: null };
}

export function applySummaryEdit(state: ChatScreenState, entry: SummaryVersionView): ChatScreenState {
  return {
    ...state,
    session: {
      ...state.session,
      summary_versions: [...state.session.summary_versions, entry],
    },
    summaryDraft: null,
  };
}

export function renderMessages(session: SessionView): string {
  const bubbles = session.messages.map((m) =>
    el('div', { class: `bubble bubble-${m.author.toLowerCase()}`, 'data-stage': m.stage_at_emission }, [
      el('span', { class: 'text' }, [escapeHtml(m.text)]),
      el('span', { class: 'when' }, [formatInstant(m.timestamp)]),
    ]),
  );
  return el('div', { class: 'message-list' }, bubbles);
}

export function renderSummaryPane(state: ChatScreenState): string {
  const entry = latestSummary(state);
  if (!entry) return '';
  const text = state.summaryDraft ?? entry.text;
  return el('aside', { class: 'summary-pane', 'data-version': String(entry.version) }, [
    el('h2', {}, ['Today’s diary so far']),
    el('textarea', { class: 'summary-editor' }, [escapeHtml(text)]),
    el('p', { class: 'summary-hint' }, ['You can rewrite this in your own words any time.']),
  ]);
}

export function renderChatScreen(state: ChatScreenState): string {
  const parts = [renderMessages(state.session)];
  if (summaryPaneVisible(state)) parts.push(renderSummaryPane(state));
  parts.push(
    el('form', { class: 'composer' }, [
      el('textarea', { name: 'draft', class: 'draft' }, [escapeHtml(state.draft)]),
      el('button', { type: 'submit', disabled: state.sending ? 'disabled' : '' }, ['Send']),
      el('button', { type: 'button', class: 'end-session' }, ['Finish today’s entry']),
    ]),
  );
  return el('main', { class: 'chat-screen', 'data-session': state.session.session_id }, parts);
}

export function renderClosingScreen(session: SessionView, reflectionDraft = ''): string {
  const latest = session.summary_versions.length
    ? session.summary_versions[session.summary_versions.length - 1]!.text
    : '';
  return el('section', { class: 'closing-screen' }, [
    el('h1', {}, ['Today’s entry']),
    el('blockquote', { class: 'final-summary' }, [escapeHtml(latest)]),
    el('form', { class: 'reflection-form' }, [
      el('label', {}, ['Anything to add about how this felt?']),
      el('textarea', { name: 'reflection' }, [escapeHtml(reflectionDraft)]),
      el('button', { type: 'submit' }, ['Save and close']),
    ]),
  ]);
}
