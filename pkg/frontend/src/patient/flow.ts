/**
 * Patient screen routing. The client owns no safety logic: which screen
 * comes after the questionnaire is decided solely by the server's
 * verdict, and a calming-content day never routes into the chat screen.
 */

import type { AssessmentResponse, GateVerdictLabel } from '../api/types.js';
import { el, escapeHtml } from '../render.js';

export type PatientScreen = 'assessment' | 'chat-entry' | 'calming' | 'review';

export function routeAfterAssessment(verdict: GateVerdictLabel): PatientScreen {
  return verdict === 'CalmingContent' ? 'calming' : 'chat-entry';
}

export function routeAssessmentResponse(response: AssessmentResponse): PatientScreen {
  // deliberately ignores response.assessment.items: the verdict is the
  // server's call, and the client must not second-guess it either way
  return routeAfterAssessment(response.verdict);
}

export const CALMING_SCREEN_COPY =
  'Thanks for checking in today. Journaling is paused for now; here are some ' +
  'calming exercises instead. Your care team has been notified and may reach out.';

export function renderCalmingScreen(): string {
  return el('section', { class: 'calming-screen' }, [
    el('h1', {}, ['A gentler day']),
    el('p', {}, [escapeHtml(CALMING_SCREEN_COPY)]),
    el('div', { class: 'calming-exercises' }, [
      el('article', {}, ['Slow breathing: in for 4, hold for 4, out for 6. Repeat ten times.']),
      el('article', {}, ['Name five things you can see, four you can touch, three you can hear.']),
    ]),
  ]);
}
