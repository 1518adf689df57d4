/** Shared test plumbing: jsdom window, clipboard recorder, live game service. */

import { spawn, ChildProcess } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { createServer } from 'node:net';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { JSDOM } from 'jsdom';

export interface Dom {
  window: JSDOM['window'];
  root: HTMLElement;
}

export function makeDom(): Dom {
  const dom = new JSDOM('<!doctype html><html><body><div id="app"></div></body></html>', {
    url: 'http://localhost/',
    pretendToBeVisual: true,
  });
  const root = dom.window.document.getElementById('app') as HTMLElement;
  return { window: dom.window, root };
}

export class ClipboardRecorder {
  copied: string[] = [];

  copyText = async (text: string): Promise<void> => {
    this.copied.push(text);
  };
}

export function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const server = createServer();
    server.listen(0, '127.0.0.1', () => {
      const address = server.address();
      if (address === null || typeof address === 'string') {
        reject(new Error('no port'));
        return;
      }
      const port = address.port;
      server.close(() => resolve(port));
    });
  });
}

/** Every main word carries a diacritic so the daily answer always has one. */
export const MAIN_WORDS = [
  'ŠUVES', 'CĪŅAS', 'PUĶES', 'FLĪŽU', 'ZEMĒM', 'GARĀM', 'VĒLĀK', 'TĪRĪT',
  'DARĀT', 'ILGĀK', 'GROZĀ', 'SAVĀM', 'JĀŅEM', 'PLAŠA', 'BIEŽA', 'RAIŅA',
];

export const SECONDARY_WORDS = [
  'SAULE', 'SIENA', 'TIESA', 'DIENA', 'LAIME', 'PIENS', 'MAIZE', 'LIEPA',
  'SAITE', 'KASTE', 'SKOLA', 'LAIKS', 'TAUKI', 'DIEVS', 'PRECE', 'MIERU',
];

export interface LiveService {
  baseUrl: string;
  main: string[];
  logPath: string;
  stop(): Promise<void>;
}

export async function startService(): Promise<LiveService> {
  const dir = mkdtempSync(join(tmpdir(), 'vardle-ui-'));
  writeFileSync(join(dir, 'main.txt'), MAIN_WORDS.join('\n') + '\n');
  writeFileSync(join(dir, 'secondary.txt'), SECONDARY_WORDS.join('\n') + '\n');
  const logPath = join(dir, 'sessions.jsonl');
  const port = await freePort();

  const proc: ChildProcess = spawn(
    'python3',
    [
      '-m', 'vardle.cli', 'serve',
      '--lists-dir', dir,
      '--log', logPath,
      '--start-date', '2022-01-28',
      '--bind', `127.0.0.1:${port}`,
    ],
    { stdio: 'ignore' },
  );

  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 15_000;
  for (;;) {
    try {
      const response = await fetch(`${baseUrl}/api/puzzle/today`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      proc.kill('SIGKILL');
      throw new Error('game service did not come up');
    }
    await new Promise((resolve) => setTimeout(resolve, 50));
  }

  return {
    baseUrl,
    main: MAIN_WORDS,
    logPath,
    stop: () =>
      new Promise<void>((resolve) => {
        proc.once('exit', () => resolve());
        proc.kill('SIGTERM');
        setTimeout(() => proc.kill('SIGKILL'), 3000).unref();
      }),
  };
}
