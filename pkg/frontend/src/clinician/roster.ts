/** Participant roster with severity bands and suspension state. */

import type { ParticipantView } from '../api/types.js';
import { el, escapeHtml } from '../render.js';

export function renderRosterRow(p: ParticipantView): string {
  return el('tr', { class: `roster-row status-${p.status.toLowerCase()}`, 'data-participant': p.participant_id }, [
    el('td', {}, [el('a', { href: `#/participants/${p.participant_id}` }, [escapeHtml(p.alias)])]),
    el('td', {}, [String(p.age)]),
    el('td', { class: `band band-${p.severity_band.toLowerCase()}` }, [p.severity_band]),
    el('td', {}, [p.status + (p.suspended_until ? ` until ${p.suspended_until.slice(0, 10)}` : '')]),
  ]);
}

export function renderRoster(participants: ParticipantView[]): string {
  const sorted = [...participants].sort((a, b) => a.alias.localeCompare(b.alias));
  return el('table', { class: 'roster' }, sorted.map(renderRosterRow));
}
