/**
 * Spawns the real backend (scripted provider, no external services) once
 * for the whole test run and tears it down afterwards. The server address
 * lands in .test-backend.json next to this file.
 */

import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join, dirname } from 'node:path';
import { fileURLToPath } from 'node:url';

const HERE = dirname(fileURLToPath(import.meta.url));
export const BACKEND_INFO_PATH = join(HERE, '.test-backend.json');

let server: ChildProcess | undefined;
let scratch: string | undefined;

async function waitForHealth(baseUrl: string, timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${baseUrl}/health`);
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error(`backend did not come up at ${baseUrl}`);
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
}

export default async function setup(): Promise<() => void> {
  const port = 8600 + Math.floor(Math.random() * 800);
  const baseUrl = `http://127.0.0.1:${port}`;
  scratch = mkdtempSync(join(tmpdir(), 'chatjournal-ui-'));

  const init = spawnSync('python3', ['-m', 'chatjournal.cli', 'init', 'cfg'], {
    cwd: scratch,
    encoding: 'utf-8',
  });
  if (init.status !== 0) {
    throw new Error(`backend config init failed: ${init.stderr}`);
  }

  server = spawn('python3', ['-m', 'chatjournal.cli', 'serve', '-c', 'cfg/config.ini'], {
    cwd: scratch,
    env: { ...process.env, CHATJOURNAL_PORT: String(port) },
    stdio: ['ignore', 'pipe', 'pipe'],
  });
  server.stderr?.on('data', () => undefined); // uvicorn logs startup to stderr

  await waitForHealth(baseUrl);
  writeFileSync(BACKEND_INFO_PATH, JSON.stringify({ baseUrl }), 'utf-8');

  return () => {
    server?.kill('SIGTERM');
    if (scratch) rmSync(scratch, { recursive: true, force: true });
    rmSync(BACKEND_INFO_PATH, { force: true });
  };
}
