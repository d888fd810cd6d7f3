/** Pure view-model behavior: no backend needed. */

import { describe, expect, it } from 'vitest';

import {
  emptyForm,
  formPayload,
  setItem,
  validateForm,
} from '../src/patient/assessmentForm.js';
import { routeAfterAssessment, routeAssessmentResponse } from '../src/patient/flow.js';
import {
  applySummaryEdit,
  applyTurn,
  chatStateFrom,
  renderChatScreen,
  summaryPaneVisible,
} from '../src/patient/chatScreen.js';
import { renderGallery } from '../src/patient/reviewGallery.js';
import { describeAlert, deepLink, sortAlerts } from '../src/clinician/alertConsole.js';
import { renderEngagement, weeklyBars } from '../src/clinician/engagementView.js';
import { renderInsightsPanel, wordCloudSpec } from '../src/clinician/insightsPanel.js';
import { parseNdjsonChunk } from '../src/api/stream.js';
import { escapeHtml } from '../src/render.js';
import type {
  AlertRowView,
  AssessmentResponse,
  InsightBundleView,
  SessionView,
  TurnResponse,
} from '../src/api/types.js';

function sessionFixture(overrides: Partial<SessionView> = {}): SessionView {
  return {
    session_id: 's-1',
    participant_id: 'p-1',
    assessment_id: 'a-1',
    started_at: '2026-03-02T09:00:00+00:00',
    ended_at: null,
    mode: 'Standard',
    status: 'Open',
    messages: [],
    stage_trace: [],
    summary_versions: [],
    reflection: null,
    config_hash: 'abc',
    ...overrides,
  };
}

function bundleFixture(overrides: Partial<InsightBundleView> = {}): InsightBundleView {
  return {
    word_frequencies: { ranked: [['walk', 4], ['lunch', 2]], tokenizer_id: 't', period_label: '', total_tokens: 6 },
    events_summary: 'walked a lot',
    emotions_summary: 'calm overall',
    period_summary: null,
    phq9_trend: [['2026-03-02T09:00:00+00:00', 4]],
    accuracy_caveat: 'Generated with a language model: summarized outcomes might not be accurate.',
    ...overrides,
  };
}

describe('assessment form', () => {
  it('starts incomplete and validates range', () => {
    const form = emptyForm();
    expect(validateForm(form)).toHaveLength(9);
    const half = setItem(form, 0, 2);
    expect(validateForm(half)).toHaveLength(8);
  });

  it('builds a payload only when complete', () => {
    let form = emptyForm();
    for (let i = 0; i < 9; i++) form = setItem(form, i, 1);
    expect(formPayload(form).items).toEqual(Array(9).fill(1));
    expect(() => formPayload(emptyForm())).toThrow(/incomplete/);
  });
});

describe('gate routing is server-decided', () => {
  it('maps verdicts to screens', () => {
    expect(routeAfterAssessment('Proceed')).toBe('chat-entry');
    expect(routeAfterAssessment('CalmingContent')).toBe('calming');
  });

  it('never second-guesses the server, even against raw item scores', () => {
    // fault-injected backend: alarming items but a Proceed verdict; the
    // client must follow the verdict and apply no safety logic of its own
    const response: AssessmentResponse = {
      verdict: 'Proceed',
      assessment: {
        assessment_id: 'a-1',
        participant_id: 'p-1',
        items: [0, 0, 0, 0, 0, 0, 0, 0, 3],
        open_answer: 'attempted',
        total: 3,
        gate_tripped: true,
        created_at: '2026-03-02T09:00:00+00:00',
      },
    };
    expect(routeAssessmentResponse(response)).toBe('chat-entry');
    expect(routeAssessmentResponse({ ...response, verdict: 'CalmingContent' })).toBe('calming');
  });
});

describe('chat screen summary pane', () => {
  it('is hidden until the server has produced a version', () => {
    const state = chatStateFrom(sessionFixture());
    expect(summaryPaneVisible(state)).toBe(false);
    expect(renderChatScreen(state)).not.toContain('summary-pane');
  });

  it('appears with the first server version and tracks edits', () => {
    const withSummary = sessionFixture({
      summary_versions: [
        { version: 0, text: 'Today I rested.', author: 'Assistant', created_at: '2026-03-02T09:05:00+00:00' },
      ],
    });
    let state = chatStateFrom(withSummary);
    expect(summaryPaneVisible(state)).toBe(true);
    expect(renderChatScreen(state)).toContain('summary-pane');
    state = applySummaryEdit(state, {
      version: 1,
      text: 'In my own words.',
      author: 'Patient',
      created_at: '2026-03-02T09:06:00+00:00',
    });
    expect(renderChatScreen(state)).toContain('data-version="1"');
  });

  it('applyTurn swaps in the server session wholesale', () => {
    const state = chatStateFrom(sessionFixture());
    const turn: TurnResponse = {
      assistant_message: {
        message_id: 'm-2',
        session_id: 's-1',
        author: 'Assistant',
        text: 'Tell me more.',
        timestamp: '2026-03-02T09:01:00+00:00',
        stage_at_emission: 'RapportBuilding',
        length_units: 10,
      },
      stage: 'RapportBuilding',
      session: sessionFixture({ messages: [], stage_trace: [[1, 'RapportBuilding']] }) as SessionView,
      summary: null,
      suspended: false,
    };
    const next = applyTurn(state, turn);
    expect(next.session.stage_trace).toEqual([[1, 'RapportBuilding']]);
    expect(next.draft).toBe('');
  });
});

describe('review gallery', () => {
  it('renders zero-state without errors', () => {
    expect(renderGallery([])).toContain('No entries yet');
  });

  it('renders newest first', () => {
    const out = renderGallery([
      {
        session_id: 's-old',
        started_at: '2026-03-01T09:00:00+00:00',
        ended_at: null,
        duration_s: null,
        status: 'Closed',
        mode: 'Standard',
        phq9_total: 2,
        message_count: 4,
        summary_text: 'old',
        summary_version_count: 1,
        reflection: null,
      },
      {
        session_id: 's-new',
        started_at: '2026-03-03T09:00:00+00:00',
        ended_at: null,
        duration_s: 120,
        status: 'Closed',
        mode: 'Standard',
        phq9_total: 1,
        message_count: 6,
        summary_text: 'new',
        summary_version_count: 2,
        reflection: 'ok',
      },
    ]);
    expect(out.indexOf('s-new')).toBeLessThan(out.indexOf('s-old'));
  });
});

describe('word cloud sizing', () => {
  it('is monotone in count and equal for ties', () => {
    const spec = wordCloudSpec([
      ['big', 10],
      ['mid', 5],
      ['mid2', 5],
      ['small', 1],
    ]);
    const size = Object.fromEntries(spec.map((w) => [w.token, w.sizePx]));
    expect(size['big']!).toBeGreaterThan(size['mid']!);
    expect(size['mid']!).toBe(size['mid2']!);
    expect(size['mid']!).toBeGreaterThan(size['small']!);
  });

  it('handles single-count clouds', () => {
    const spec = wordCloudSpec([['only', 3]]);
    expect(spec).toHaveLength(1);
    expect(spec[0]!.sizePx).toBeGreaterThan(0);
  });
});

describe('insights panel caveat invariant', () => {
  it('always includes the caveat text', () => {
    const html = renderInsightsPanel(bundleFixture());
    const matches = html.match(/might not be accurate/g) ?? [];
    expect(matches.length).toBeGreaterThanOrEqual(1);
    expect(html).toContain('caveat-tooltip');
  });

  it('shows a first-use banner when asked', () => {
    expect(renderInsightsPanel(bundleFixture(), { firstUse: true })).toContain('caveat-banner');
  });

  it('refuses to render a bundle without the caveat', () => {
    expect(() => renderInsightsPanel(bundleFixture({ accuracy_caveat: '' }))).toThrow(/caveat/);
  });

  it('renders provider-down bundles with placeholders, caveat intact', () => {
    const html = renderInsightsPanel(bundleFixture({ events_summary: null, emotions_summary: null }));
    expect(html).toContain('Summary unavailable');
    expect(html).toContain('might not be accurate');
  });
});

describe('alert console', () => {
  const base: AlertRowView = {
    alert_id: 'al-1',
    kind: 'SensitiveTurn',
    participant_id: 'p-1',
    session_id: 's-1',
    created_at: '2026-03-02T09:00:00+00:00',
    payload: { triggers: [{ type: 'lexicon', term: 'self-harm' }] },
    delivery_status: { state: 'Pending', reason: null },
    acknowledged_at: null,
    acknowledged_by: null,
  };

  it('unacknowledged alerts sort first', () => {
    const acked: AlertRowView = {
      ...base,
      alert_id: 'al-0',
      created_at: '2026-03-03T09:00:00+00:00',
      acknowledged_at: '2026-03-03T10:00:00+00:00',
      acknowledged_by: 'dr',
    };
    const order = sortAlerts([acked, base]).map((a) => a.alert_id);
    expect(order).toEqual(['al-1', 'al-0']);
  });

  it('deep-links into the session log', () => {
    expect(deepLink(base)).toBe('#/sessions/s-1');
    expect(describeAlert(base)).toContain('self-harm');
  });
});

describe('weekly bars', () => {
  it('scales against the maximum week', () => {
    const bars = weeklyBars([2, 4, 0]);
    expect(bars.map((b) => b.heightPct)).toEqual([50, 100, 0]);
  });
});

describe('engagement zero-state', () => {
  it('renders an empty notice instead of charts', () => {
    const html = renderEngagement({
      entries_total: 0,
      entries_per_participant_mean: 0,
      entries_per_day_mean: 0,
      session_duration_mean_s: 0,
      session_duration_sd_s: 0,
      message_length_mean_units: 0,
      message_length_sd_units: 0,
      messages_per_session_mean: 0,
      messages_per_session_sd: 0,
      weekly_entry_counts: [],
      stage_distribution: {
        counts: {},
        not_selected: 0,
        fractions: {},
        staged_total: 0,
        message_total: 0,
        share_of_total: {},
      },
      empty_period: true,
    });
    expect(html).toContain('No activity');
    expect(html).not.toContain('weekly-chart');
  });
});

describe('stream chunk parser', () => {
  it('handles partial lines across chunks', () => {
    const first = parseNdjsonChunk('', '{"event_id":1,"kind":"a","occurred_at":"t","actor":"x","payload":{}}\n{"event_id":2,');
    expect(first.events.map((e) => e.event_id)).toEqual([1]);
    const second = parseNdjsonChunk(first.rest, '"kind":"b","occurred_at":"t","actor":"x","payload":{}}\n');
    expect(second.events.map((e) => e.event_id)).toEqual([2]);
    expect(second.rest).toBe('');
  });
});

describe('html escaping', () => {
  it('neutralizes markup in user text', () => {
    expect(escapeHtml('<script>alert(1)</script>')).not.toContain('<script>');
  });
});
