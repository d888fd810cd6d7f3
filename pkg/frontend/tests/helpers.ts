import { readFileSync } from 'node:fs';
import { join, dirname } from 'node:path';
import { fileURLToPath } from 'node:url';

import { ApiClient } from '../src/api/client.js';

const HERE = dirname(fileURLToPath(import.meta.url));

export const OPERATOR_TOKEN = 'demo-operator';
export const PATIENT_TOKEN = 'demo-patient'; // bound to p-000001
export const CLINICIAN_TOKEN = 'demo-clinician'; // assigned p-000001, p-000002

export function backendBaseUrl(): string {
  const info = JSON.parse(readFileSync(join(HERE, '.test-backend.json'), 'utf-8')) as { baseUrl: string };
  return info.baseUrl;
}

export function client(token: string): ApiClient {
  return new ApiClient({ baseUrl: backendBaseUrl(), token });
}

let counter = 0;

/** Fresh participant via the operator console; acts through operator token. */
export async function newParticipant(alias?: string): Promise<string> {
  counter += 1;
  const ops = client(OPERATOR_TOKEN);
  const { participant } = await ops.registerParticipant({
    alias: alias ?? `ui-${Date.now()}-${counter}`,
    age: 17,
    gender: 'F',
    cesdc_score: 12,
    timezone: 'UTC',
  });
  return participant.participant_id;
}

export const CLEAN_ITEMS = [0, 0, 0, 0, 0, 0, 0, 0, 0];
export const TRIPPED_ITEMS = [0, 0, 0, 0, 0, 0, 0, 0, 3];
