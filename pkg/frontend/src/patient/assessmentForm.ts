/**
 * Pre-journaling questionnaire form: nine 0..3 items plus the open
 * self-harm question. The form only collects and validates input shape;
 * the verdict comes back from the server.
 */

import { el, escapeHtml } from '../render.js';

export const ITEM_LABELS: readonly string[] = [
  'Little interest or pleasure in doing things',
  'Feeling down, depressed, or hopeless',
  'Trouble sleeping, or sleeping too much',
  'Feeling tired or having little energy',
  'Poor appetite or overeating',
  'Feeling bad about yourself or like a failure',
  'Trouble concentrating on things',
  'Moving or speaking very slowly, or being unusually restless',
  'Thoughts of hurting yourself or of being better off dead',
];

export const SCALE_LABELS: readonly string[] = [
  'Not at all',
  'Several days',
  'More than half the days',
  'Nearly every day',
];

export const OPEN_QUESTION =
  'Have you recently attempted to harm yourself, or made any attempt on your life? You can answer in your own words.';

export interface AssessmentFormState {
  items: (number | null)[];
  openAnswer: string;
}

export function emptyForm(): AssessmentFormState {
  return { items: Array(9).fill(null), openAnswer: '' };
}

export function setItem(state: AssessmentFormState, index: number, value: number): AssessmentFormState {
  const items = state.items.slice();
  items[index] = value;
  return { ...state, items };
}

export function validateForm(state: AssessmentFormState): string[] {
  const errors: string[] = [];
  state.items.forEach((value, i) => {
    if (value === null) errors.push(`item ${i + 1} is unanswered`);
    else if (!Number.isInteger(value) || value < 0 || value > 3) errors.push(`item ${i + 1} out of range`);
  });
  return errors;
}

export function formPayload(state: AssessmentFormState): { items: number[]; openAnswer: string } {
  const errors = validateForm(state);
  if (errors.length) throw new Error(`form incomplete: ${errors.join(', ')}`);
  return { items: state.items as number[], openAnswer: state.openAnswer };
}

export function renderAssessmentForm(state: AssessmentFormState): string {
  const rows = ITEM_LABELS.map((label, i) => {
    const choices = SCALE_LABELS.map((scale, value) =>
      el('label', { class: 'choice' }, [
        `<input type="radio" name="item-${i}" value="${value}"${state.items[i] === value ? ' checked' : ''}/>`,
        escapeHtml(scale),
      ]),
    );
    return el('fieldset', { class: 'assessment-item', 'data-item': String(i) }, [
      el('legend', {}, [escapeHtml(label)]),
      ...choices,
    ]);
  });
  return el('form', { class: 'assessment-form' }, [
    ...rows,
    el('fieldset', { class: 'open-question' }, [
      el('legend', {}, [escapeHtml(OPEN_QUESTION)]),
      el('textarea', { name: 'open-answer' }, [escapeHtml(state.openAnswer)]),
    ]),
    el('button', { type: 'submit' }, ['Start today’s journal']),
  ]);
}
