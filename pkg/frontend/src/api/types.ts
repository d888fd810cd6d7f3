/**
 * View-model types mirroring the backend's canonical JSON schemas.
 * Stage slots use the string "NotSelected" when unfilled; timestamps are
 * UTC ISO-8601 strings.
 */

export type StageLabel = 'RapportBuilding' | 'Exploration' | 'WrapUp' | 'SensitiveTopic';
export type StageOrNone = StageLabel | 'NotSelected';
export type AuthorLabel = 'Patient' | 'Assistant' | 'System';
export type SessionModeLabel = 'Standard' | 'CalmingContent';
export type SessionStatusLabel = 'Open' | 'Closed' | 'Halted';
export type GateVerdictLabel = 'Proceed' | 'CalmingContent';
export type AlertKindLabel =
  | 'GateTrip'
  | 'SensitiveTurn'
  | 'SuspensionStarted'
  | 'ReminderDue'
  | 'DropoutFlag'
  | 'ReviewDue';

export interface ParticipantView {
  participant_id: string;
  alias: string;
  age: number;
  gender: string;
  severity_band: 'Minimal' | 'Mild' | 'Severe';
  enrollment_date: string;
  timezone: string;
  status: 'Active' | 'Suspended' | 'Dropped';
  suspended_until: string | null;
  cesdc_score: number | null;
}

export interface AssessmentView {
  assessment_id: string;
  participant_id: string;
  items: number[];
  open_answer: string;
  total: number;
  gate_tripped: boolean;
  created_at: string;
}

export interface MessageView {
  message_id: string;
  session_id: string;
  author: AuthorLabel;
  text: string;
  timestamp: string;
  stage_at_emission: StageOrNone;
  length_units: number;
}

export interface SummaryVersionView {
  version: number;
  text: string;
  author: AuthorLabel;
  created_at: string;
}

export interface SessionView {
  session_id: string;
  participant_id: string;
  assessment_id: string;
  started_at: string;
  ended_at: string | null;
  mode: SessionModeLabel;
  status: SessionStatusLabel;
  messages: MessageView[];
  stage_trace: [number, StageOrNone][];
  summary_versions: SummaryVersionView[];
  reflection: string | null;
  config_hash: string;
}

export interface JournalCardView {
  session_id: string;
  started_at: string;
  ended_at: string | null;
  duration_s: number | null;
  status: SessionStatusLabel;
  mode: SessionModeLabel;
  phq9_total: number | null;
  message_count: number;
  summary_text: string | null;
  summary_version_count: number;
  reflection: string | null;
}

export interface AlertRowView {
  alert_id: string;
  kind: AlertKindLabel;
  participant_id: string;
  session_id: string | null;
  created_at: string;
  payload: Record<string, unknown>;
  delivery_status: { state: 'Pending' | 'Delivered' | 'Failed'; reason: string | null };
  acknowledged_at: string | null;
  acknowledged_by: string | null;
}

export interface StageDistributionView {
  counts: Record<string, number>;
  not_selected: number;
  fractions: Record<string, number>;
  staged_total: number;
  message_total: number;
  share_of_total: Record<string, number>;
}

export interface EngagementView {
  entries_total: number;
  entries_per_participant_mean: number;
  entries_per_day_mean: number;
  session_duration_mean_s: number;
  session_duration_sd_s: number;
  message_length_mean_units: number;
  message_length_sd_units: number;
  messages_per_session_mean: number;
  messages_per_session_sd: number;
  weekly_entry_counts: number[];
  stage_distribution: StageDistributionView;
  empty_period: boolean;
}

export interface WordFrequencyView {
  ranked: [string, number][];
  tokenizer_id: string;
  period_label: string;
  total_tokens: number;
}

export interface InsightBundleView {
  word_frequencies: WordFrequencyView;
  events_summary: string | null;
  emotions_summary: string | null;
  period_summary: string | null;
  phq9_trend: [string, number][];
  accuracy_caveat: string;
}

export interface TurnResponse {
  assistant_message: MessageView;
  stage: StageLabel;
  session: SessionView;
  summary: SummaryVersionView | null;
  suspended: boolean;
}

export interface AssessmentResponse {
  assessment: AssessmentView;
  verdict: GateVerdictLabel;
}

export interface SessionResponse {
  session: SessionView;
  mode: SessionModeLabel;
}

export interface DomainEventView {
  event_id: number;
  kind: string;
  occurred_at: string;
  actor: string;
  payload: Record<string, unknown>;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
