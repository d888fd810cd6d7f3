/** Engagement charts: weekly entry bars and summary stats, data-prep first. */

import type { EngagementView } from '../api/types.js';
import { el } from '../render.js';

export interface WeeklyBar {
  week: number;
  count: number;
  heightPct: number;
}

export function weeklyBars(weekly: number[]): WeeklyBar[] {
  const max = Math.max(1, ...weekly);
  return weekly.map((count, week) => ({ week, count, heightPct: (count / max) * 100 }));
}

export function summaryStats(e: EngagementView): [string, string][] {
  return [
    ['Entries', String(e.entries_total)],
    ['Entries / participant', e.entries_per_participant_mean.toFixed(2)],
    ['Entries / day', e.entries_per_day_mean.toFixed(2)],
    ['Session length', `${Math.round(e.session_duration_mean_s)}s (sd ${Math.round(e.session_duration_sd_s)})`],
    ['Message length', `${e.message_length_mean_units.toFixed(1)} units`],
    ['Messages / session', e.messages_per_session_mean.toFixed(2)],
  ];
}

export function renderEngagement(e: EngagementView): string {
  if (e.empty_period) {
    return el('section', { class: 'engagement empty' }, [el('p', {}, ['No activity in this period yet.'])]);
  }
  const stats = summaryStats(e).map(([label, value]) =>
    el('div', { class: 'stat' }, [el('dt', {}, [label]), el('dd', {}, [value])]),
  );
  const bars = weeklyBars(e.weekly_entry_counts).map((bar) =>
    el('div', { class: 'week-bar', style: `height:${bar.heightPct.toFixed(0)}%`, title: `week ${bar.week + 1}` }, [
      String(bar.count),
    ]),
  );
  const stageRows = Object.entries(e.stage_distribution.counts).map(([stage, count]) =>
    el('tr', {}, [
      el('td', {}, [stage]),
      el('td', {}, [String(count)]),
      el('td', {}, [`${(100 * (e.stage_distribution.fractions[stage] ?? 0)).toFixed(1)}%`]),
    ]),
  );
  return el('section', { class: 'engagement' }, [
    el('dl', { class: 'stats' }, stats),
    el('div', { class: 'weekly-chart' }, bars),
    el('table', { class: 'stage-table' }, stageRows),
  ]);
}
