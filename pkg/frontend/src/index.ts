export { ApiClient, ApiError } from './api/client.js';
export type { ClientConfig } from './api/client.js';
export { MonitorStream, parseNdjsonChunk } from './api/stream.js';
export * from './api/types.js';
export {
  ITEM_LABELS,
  OPEN_QUESTION,
  SCALE_LABELS,
  emptyForm,
  formPayload,
  renderAssessmentForm,
  setItem,
  validateForm,
} from './patient/assessmentForm.js';
export {
  CALMING_SCREEN_COPY,
  renderCalmingScreen,
  routeAfterAssessment,
  routeAssessmentResponse,
} from './patient/flow.js';
export type { PatientScreen } from './patient/flow.js';
export {
  applySummaryEdit,
  applyTurn,
  chatStateFrom,
  latestSummary,
  renderChatScreen,
  renderClosingScreen,
  renderMessages,
  renderSummaryPane,
  summaryPaneVisible,
} from './patient/chatScreen.js';
export { renderGallery, renderJournalCard } from './patient/reviewGallery.js';
export { renderEngagement, summaryStats, weeklyBars } from './clinician/engagementView.js';
export {
  renderInsightsPanel,
  renderTrend,
  renderWordCloud,
  trendSeries,
  wordCloudSpec,
} from './clinician/insightsPanel.js';
export {
  describeAlert,
  deepLink,
  renderAlertConsole,
  renderAlertRow,
  sortAlerts,
} from './clinician/alertConsole.js';
export { renderRoster, renderRosterRow } from './clinician/roster.js';
export { el, escapeHtml, formatDuration, formatInstant } from './render.js';
