/**
 * Insights panel: word cloud, event and emotion summaries, period picker
 * results, and the PHQ-9 trend. Rendering an insight bundle without its
 * accuracy caveat is a hard error: the caveat is shown as a persistent
 * tooltip on every section and as a prominent notice on first use.
 */

import type { InsightBundleView } from '../api/types.js';
import { el, escapeHtml } from '../render.js';

export interface CloudWord {
  token: string;
  count: number;
  sizePx: number;
}

/** Font size scales linearly with count between minPx and maxPx. */
export function wordCloudSpec(
  ranked: [string, number][],
  opts: { minPx?: number; maxPx?: number; maxWords?: number } = {},
): CloudWord[] {
  const { minPx = 12, maxPx = 42, maxWords = 60 } = opts;
  const words = ranked.slice(0, maxWords);
  if (!words.length) return [];
  const counts = words.map(([, count]) => count);
  const lo = Math.min(...counts);
  const hi = Math.max(...counts);
  return words.map(([token, count]) => ({
    token,
    count,
    sizePx: hi === lo ? (minPx + maxPx) / 2 : minPx + ((count - lo) / (hi - lo)) * (maxPx - minPx),
  }));
}

export function renderWordCloud(ranked: [string, number][]): string {
  const spec = wordCloudSpec(ranked);
  if (!spec.length) return el('div', { class: 'word-cloud empty' }, ['No terms in this period.']);
  return el(
    'div',
    { class: 'word-cloud' },
    spec.map((w) =>
      el('span', { class: 'cloud-word', style: `font-size:${w.sizePx.toFixed(1)}px`, title: `${w.count}` }, [
        escapeHtml(w.token),
      ]),
    ),
  );
}

export function trendSeries(trend: [string, number][]): { at: string; total: number }[] {
  return trend.map(([at, total]) => ({ at, total }));
}

export function renderTrend(trend: [string, number][]): string {
  if (!trend.length) return el('div', { class: 'phq9-trend empty' }, ['No assessments yet.']);
  const max = 27;
  const points = trendSeries(trend).map((p) =>
    el(
      'div',
      {
        class: 'trend-point',
        style: `height:${((p.total / max) * 100).toFixed(0)}%`,
        title: `${p.at}: ${p.total}`,
      },
      [String(p.total)],
    ),
  );
  return el('div', { class: 'phq9-trend' }, points);
}

export function renderInsightsPanel(bundle: InsightBundleView, opts: { firstUse?: boolean } = {}): string {
  if (!bundle.accuracy_caveat || !bundle.accuracy_caveat.trim()) {
    throw new Error('refusing to render an insight bundle without its accuracy caveat');
  }
  const caveat = escapeHtml(bundle.accuracy_caveat);
  const tooltip = el('span', { class: 'caveat-tooltip', title: bundle.accuracy_caveat }, ['ⓘ']);
  const sections: string[] = [];
  if (opts.firstUse) {
    sections.push(el('div', { class: 'caveat-banner first-use', role: 'alert' }, [caveat]));
  }
  sections.push(
    el('section', { class: 'insight-words' }, [
      el('h2', {}, ['Frequent terms', tooltip]),
      renderWordCloud(bundle.word_frequencies.ranked),
    ]),
    el('section', { class: 'insight-events' }, [
      el('h2', {}, ['Major events', tooltip]),
      el('p', {}, [bundle.events_summary ? escapeHtml(bundle.events_summary) : 'Summary unavailable right now.']),
    ]),
    el('section', { class: 'insight-emotions' }, [
      el('h2', {}, ['Emotional tone', tooltip]),
      el('p', {}, [bundle.emotions_summary ? escapeHtml(bundle.emotions_summary) : 'Summary unavailable right now.']),
    ]),
  );
  if (bundle.period_summary) {
    sections.push(
      el('section', { class: 'insight-period' }, [
        el('h2', {}, ['Selected period', tooltip]),
        el('p', {}, [escapeHtml(bundle.period_summary)]),
      ]),
    );
  }
  sections.push(
    el('section', { class: 'insight-trend' }, [el('h2', {}, ['Questionnaire trend', tooltip]), renderTrend(bundle.phq9_trend)]),
    el('footer', { class: 'caveat-footer' }, [caveat]),
  );
  return el('div', { class: 'insights-panel' }, sections);
}
