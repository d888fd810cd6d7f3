/**
 * Browser bootstrap: wires the tested view models and render functions to
 * the DOM with hash routing. Connection settings (API base URL, token,
 * participant id, role) come from the query string or localStorage.
 *
 * Patient: #/assessment -> #/chat (or #/calming) -> #/review
 * Clinician: #/roster -> #/dash/<participant> (engagement | journals |
 * insights | alerts | live stream)
 */

import { ApiClient, ApiError } from './api/client.js';
import { MonitorStream } from './api/stream.js';
import type { AssessmentFormState } from './patient/assessmentForm.js';
import { emptyForm, formPayload, renderAssessmentForm, setItem } from './patient/assessmentForm.js';
import { renderCalmingScreen, routeAssessmentResponse } from './patient/flow.js';
import type { ChatScreenState } from './patient/chatScreen.js';
import {
  applySummaryEdit,
  applyTurn,
  chatStateFrom,
  renderChatScreen,
  renderClosingScreen,
} from './patient/chatScreen.js';
import { renderGallery } from './patient/reviewGallery.js';
import { renderAlertConsole } from './clinician/alertConsole.js';
import { renderEngagement } from './clinician/engagementView.js';
import { renderInsightsPanel, renderTrend } from './clinician/insightsPanel.js';
import { renderRoster } from './clinician/roster.js';
import { el, escapeHtml } from './render.js';

interface AppConfig {
  baseUrl: string;
  token: string;
  participantId: string;
  role: 'patient' | 'clinician';
}

function loadConfig(): AppConfig {
  const params = new URLSearchParams(window.location.search);
  const stored = JSON.parse(localStorage.getItem('chatjournal-config') ?? '{}');
  const config: AppConfig = {
    baseUrl: params.get('api') ?? stored.baseUrl ?? 'http://127.0.0.1:8000',
    token: params.get('token') ?? stored.token ?? 'demo-patient',
    participantId: params.get('participant') ?? stored.participantId ?? 'p-000001',
    role: (params.get('role') ?? stored.role ?? 'patient') as AppConfig['role'],
  };
  localStorage.setItem('chatjournal-config', JSON.stringify(config));
  return config;
}

const config = loadConfig();
const api = new ApiClient({ baseUrl: config.baseUrl, token: config.token });
const root = document.getElementById('app')!;

let form: AssessmentFormState = emptyForm();
let chat: ChatScreenState | null = null;
let streamStop: (() => void) | null = null;

function show(html: string): void {
  if (streamStop) {
    streamStop();
    streamStop = null;
  }
  root.innerHTML = html;
}

function showError(err: unknown): void {
  const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
  const banner = el('div', { class: 'error-banner', role: 'alert' }, [escapeHtml(message)]);
  root.insertAdjacentHTML('afterbegin', banner);
}

// -- patient screens ---------------------------------------------------------

function showAssessment(): void {
  show(el('div', { class: 'screen' }, [el('h1', {}, ['Before we start']), renderAssessmentForm(form)]));
}

async function submitAssessmentForm(): Promise<void> {
  const payload = formPayload(form);
  const response = await api.submitAssessment(config.participantId, payload.items, payload.openAnswer);
  if (routeAssessmentResponse(response) === 'calming') {
    window.location.hash = '#/calming';
    return;
  }
  const created = await api.createSession(config.participantId);
  chat = chatStateFrom(created.session);
  window.location.hash = '#/chat';
}

function showChat(): void {
  if (!chat) {
    window.location.hash = '#/assessment';
    return;
  }
  show(renderChatScreen(chat));
}

async function sendDraft(text: string): Promise<void> {
  if (!chat || !text.trim()) return;
  const turn = await api.sendMessage(chat.session.session_id, text);
  chat = applyTurn(chat, turn);
  if (turn.suspended) {
    show(renderCalmingScreen());
    return;
  }
  showChat();
}

async function showReview(): Promise<void> {
  const { journals } = await api.journals(config.participantId);
  show(el('div', { class: 'screen' }, [el('h1', {}, ['Your past entries']), renderGallery(journals)]));
}

// -- clinician screens ----------------------------------------------------------

async function showRoster(): Promise<void> {
  const { participants } = await api.participants();
  show(el('div', { class: 'screen' }, [el('h1', {}, ['Participants']), renderRoster(participants)]));
}

async function showDashboard(pid: string, tab: string): Promise<void> {
  const tabs = ['engagement', 'journals', 'insights', 'alerts', 'live']
    .map((name) =>
      el('a', { href: `#/dash/${pid}/${name}`, class: name === tab ? 'tab active' : 'tab' }, [name]),
    )
    .join(' ');
  let body = '';
  if (tab === 'engagement') {
    const [{ engagement }, { journals }] = await Promise.all([api.engagement(pid), api.journals(pid)]);
    const trend = journals
      .filter((card) => card.phq9_total !== null)
      .map((card): [string, number] => [card.started_at, card.phq9_total!]);
    body =
      renderEngagement(engagement) +
      el('section', { class: 'engagement-trend' }, [el('h2', {}, ['Questionnaire per session']), renderTrend(trend)]);
  } else if (tab === 'journals') {
    const { journals } = await api.journals(pid);
    body = renderGallery(journals);
  } else if (tab === 'insights') {
    const firstUse = !localStorage.getItem('insights-caveat-seen');
    const { insights } = await api.insights(pid);
    body = renderInsightsPanel(insights, { firstUse });
    localStorage.setItem('insights-caveat-seen', '1');
  } else if (tab === 'alerts') {
    const { alerts } = await api.alerts();
    body = renderAlertConsole(alerts.filter((a) => a.participant_id === pid));
  } else if (tab === 'live') {
    body = el('pre', { class: 'live-stream', id: 'live-log' }, ['connecting…']);
  }
  show(el('div', { class: 'screen dashboard' }, [el('nav', { class: 'tabs' }, [tabs]), body]));
  if (tab === 'live') startStream(pid);
}

function startStream(pid: string): void {
  const target = document.getElementById('live-log')!;
  target.textContent = '';
  const stream = new MonitorStream((cursor) => api.streamUrl(pid, cursor, { waitS: 20 }), config.token);
  let stopped = false;
  streamStop = () => {
    stopped = true;
  };
  (async () => {
    while (!stopped) {
      try {
        const events = await stream.readOnce(); // resumes from the cursor on each reconnect
        for (const event of events) {
          target.textContent += `${event.event_id} ${event.occurred_at} ${event.kind}\n`;
        }
      } catch {
        await new Promise((resolve) => setTimeout(resolve, 1000));
      }
    }
  })();
}

// -- routing & events -------------------------------------------------------------

async function route(): Promise<void> {
  const hash = window.location.hash || (config.role === 'clinician' ? '#/roster' : '#/assessment');
  try {
    if (hash === '#/assessment') showAssessment();
    else if (hash === '#/calming') show(renderCalmingScreen());
    else if (hash === '#/chat') showChat();
    else if (hash === '#/closing' && chat) show(renderClosingScreen(chat.session));
    else if (hash === '#/review') await showReview();
    else if (hash === '#/roster') await showRoster();
    else if (hash.startsWith('#/dash/')) {
      const [, , pid, tab] = hash.split('/');
      await showDashboard(pid!, tab ?? 'engagement');
    } else if (hash.startsWith('#/sessions/')) {
      const sessionId = hash.split('/')[2]!;
      const { session } = await api.session(sessionId);
      show(
        el('div', { class: 'screen' }, [
          el('h1', {}, [`Session ${escapeHtml(sessionId)}`]),
          renderChatScreen(chatStateFrom(session)),
        ]),
      );
    } else showAssessment();
  } catch (err) {
    showError(err);
  }
}

root.addEventListener('submit', (raw) => {
  const event = raw as SubmitEvent;
  const target = event.target as HTMLFormElement;
  event.preventDefault();
  if (target.classList.contains('assessment-form')) {
    const data = new FormData(target);
    for (let i = 0; i < 9; i++) {
      const value = data.get(`item-${i}`);
      if (value !== null) form = setItem(form, i, Number(value));
    }
    form = { ...form, openAnswer: String(data.get('open-answer') ?? '') };
    submitAssessmentForm().catch(showError);
  } else if (target.classList.contains('composer')) {
    const draft = (target.querySelector('.draft') as HTMLTextAreaElement).value;
    sendDraft(draft).catch(showError);
  } else if (target.classList.contains('reflection-form') && chat) {
    const reflection = (target.querySelector('textarea') as HTMLTextAreaElement).value;
    api
      .closeSession(chat.session.session_id, reflection)
      .then(() => {
        window.location.hash = '#/review';
      })
      .catch(showError);
  }
});

root.addEventListener('click', (event) => {
  const target = event.target as HTMLElement;
  if (target.classList.contains('end-session')) {
    window.location.hash = '#/closing';
  } else if (target.classList.contains('ack')) {
    api
      .acknowledgeAlert(target.dataset['alert']!)
      .then(() => route())
      .catch(showError);
  }
});

root.addEventListener(
  'blur',
  (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains('summary-editor') && chat) {
      const text = (target as HTMLTextAreaElement).value;
      const current = chat.session.summary_versions.at(-1);
      if (current && text !== current.text) {
        api
          .editSummary(chat.session.session_id, text)
          .then(({ entry }) => {
            chat = applySummaryEdit(chat!, entry);
          })
          .catch(showError);
      }
    }
  },
  true,
);

window.addEventListener('hashchange', () => void route());
void route();
