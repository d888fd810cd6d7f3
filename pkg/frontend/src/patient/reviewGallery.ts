/** Past entries as cards: timestamp, duration, score, summary snippet. */

import type { JournalCardView } from '../api/types.js';
import { el, escapeHtml, formatDuration, formatInstant } from '../render.js';

export function renderJournalCard(card: JournalCardView): string {
  const snippet = card.summary_text ? card.summary_text.slice(0, 140) : '(no summary yet)';
  const meta = [
    formatInstant(card.started_at),
    card.duration_s !== null ? formatDuration(card.duration_s) : '',
    card.phq9_total !== null ? `score ${card.phq9_total}` : '',
    `${card.message_count} messages`,
  ].filter(Boolean);
  return el(
    'article',
    { class: `journal-card status-${card.status.toLowerCase()}`, 'data-session': card.session_id },
    [
      el('header', {}, [
        el('a', { href: `#/sessions/${card.session_id}`, class: 'card-link' }, [escapeHtml(meta.join(' · '))]),
      ]),
      el('p', { class: 'snippet' }, [escapeHtml(snippet)]),
      card.reflection ? el('footer', { class: 'reflection' }, [escapeHtml(card.reflection)]) : '',
    ],
  );
}

export function renderGallery(cards: JournalCardView[]): string {
  if (!cards.length) {
    return el('section', { class: 'review-gallery empty' }, [
      el('p', {}, ['No entries yet. Your first conversation will show up here.']),
    ]);
  }
  const newestFirst = [...cards].sort((a, b) => b.started_at.localeCompare(a.started_at));
  return el('section', { class: 'review-gallery' }, newestFirst.map(renderJournalCard));
}
