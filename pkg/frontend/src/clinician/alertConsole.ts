/**
 * Safety console: alert rows with acknowledge / suspend / resume actions
 * and deep links into the session log. Unacknowledged alerts sort to the
 * top, newest first within each group.
 */

import type { AlertRowView } from '../api/types.js';
import { el, escapeHtml, formatInstant } from '../render.js';

export function sortAlerts(alerts: AlertRowView[]): AlertRowView[] {
  return [...alerts].sort((a, b) => {
    const ackA = a.acknowledged_at ? 1 : 0;
    const ackB = b.acknowledged_at ? 1 : 0;
    if (ackA !== ackB) return ackA - ackB;
    return b.created_at.localeCompare(a.created_at);
  });
}

export function deepLink(alert: AlertRowView): string {
  return alert.session_id ? `#/sessions/${alert.session_id}` : `#/participants/${alert.participant_id}`;
}

export function describeAlert(alert: AlertRowView): string {
  switch (alert.kind) {
    case 'SensitiveTurn': {
      const triggers = (alert.payload['triggers'] as { type: string; term?: string }[] | undefined) ?? [];
      const terms = triggers.filter((t) => t.term).map((t) => t.term);
      return terms.length ? `Sensitive content: ${terms.join(', ')}` : 'Sensitive-topic turn';
    }
    case 'GateTrip':
      return 'Pre-journaling gate tripped';
    case 'SuspensionStarted':
      return 'System use suspended';
    case 'ReminderDue':
      return 'Three consecutive missed days';
    case 'DropoutFlag':
      return 'Four consecutive missed days';
    case 'ReviewDue':
      return 'Session awaiting review';
  }
}

export function renderAlertRow(alert: AlertRowView): string {
  const classes = ['alert-row', `kind-${alert.kind.toLowerCase()}`];
  if (!alert.acknowledged_at) classes.push('unacknowledged');
  return el('tr', { class: classes.join(' '), 'data-alert': alert.alert_id }, [
    el('td', { class: 'when' }, [formatInstant(alert.created_at)]),
    el('td', { class: 'what' }, [
      el('a', { href: deepLink(alert) }, [escapeHtml(describeAlert(alert))]),
    ]),
    el('td', { class: 'who' }, [escapeHtml(alert.participant_id)]),
    el('td', { class: 'delivery' }, [alert.delivery_status.state]),
    el('td', { class: 'actions' }, [
      alert.acknowledged_at
        ? `acknowledged by ${escapeHtml(alert.acknowledged_by ?? '')}`
        : el('button', { class: 'ack', 'data-alert': alert.alert_id }, ['Acknowledge']),
    ]),
  ]);
}

export function renderAlertConsole(alerts: AlertRowView[]): string {
  if (!alerts.length) {
    return el('section', { class: 'alert-console empty' }, [el('p', {}, ['No alerts. All quiet.'])]);
  }
  return el('section', { class: 'alert-console' }, [
    el('table', { class: 'alerts' }, sortAlerts(alerts).map(renderAlertRow)),
  ]);
}
