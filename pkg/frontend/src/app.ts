/** The game application: board, keyboard, guess flow, result dialog, stats. */

import { Api, ApiError, FinalizeResponse } from './api.js';
import { KEYBOARD_ROWS, letterForKey } from './letters.js';
import { COLS, StoredGame, ViewState } from './state.js';

const STORAGE_KEY = 'vardle.game';
const CLIENT_KEY = 'vardle.client';
const DIST_KEYS = ['G1', 'G2', 'G3', 'G4', 'G5', 'G6', 'X'];

export interface AppOptions {
  api?: Api;
  storage?: Storage | null;
  copyText?: (text: string) => Promise<void>;
  revealDelayMs?: number;
}

function randomClientId(): string {
  const bytes = new Uint8Array(8);
  crypto.getRandomValues(bytes);
  return Array.from(bytes, (b) => b.toString(16).padStart(2, '0')).join('');
}

export class App {
  state = new ViewState();

  private readonly api: Api;
  private readonly storage: Storage | null;
  private readonly copyText: (text: string) => Promise<void>;
  private readonly revealDelayMs: number;
  private readonly doc: Document;
  private busy = false;
  private noticeTimer: ReturnType<typeof setTimeout> | null = null;

  private boardEl!: HTMLElement;
  private keyboardEl!: HTMLElement;
  private noticeEl!: HTMLElement;
  private dialogEl!: HTMLElement;

  constructor(
    readonly root: HTMLElement,
    options: AppOptions = {},
  ) {
    this.api = options.api ?? new Api();
    this.storage = options.storage !== undefined ? options.storage : globalThis.localStorage;
    this.copyText =
      options.copyText ?? ((text) => navigator.clipboard.writeText(text));
    this.revealDelayMs = options.revealDelayMs ?? 250;
    this.doc = root.ownerDocument;
    this.renderShell();
    this.doc.addEventListener('keydown', this.onKeydown);
  }

  /** Load today's puzzle, restoring a stored game for the same date. */
  async start(): Promise<void> {
    try {
      const today = await this.api.today();
      const stored = this.loadStored();
      if (stored !== null && stored.date === today.date) {
        this.state = ViewState.fromStored(stored, today.puzzle_id);
      } else {
        this.storage?.removeItem(STORAGE_KEY);
        const token = await this.api.openSession(this.clientId());
        this.state = new ViewState();
        this.state.token = token;
        this.state.puzzleId = today.puzzle_id;
        this.state.date = today.date;
      }
      this.renderAll();
      if (this.state.phase === 'finished') {
        await this.finishFlow();
      }
    } catch {
      this.notice('Neizdevās ielādēt spēli — pārlādē lapu', 0);
    }
  }

  /** Submit the current five-letter entry to the service. */
  async submitEntry(): Promise<void> {
    if (this.state.phase !== 'entering' || this.busy) return;
    if (this.state.entry.length !== COLS) {
      this.notice('Par īsu — vajag 5 burtus');
      return;
    }
    const token = this.state.token;
    if (token === null) return;
    const guess = this.state.entry;
    this.busy = true;
    try {
      const result = await this.api.submitGuess(token, guess);
      if (!result.valid) {
        // Entry stays editable; the word just is not playable.
        this.notice('Nav vārdu sarakstā');
        return;
      }
      this.state.phase = 'revealing';
      this.renderAll();
      await this.revealPause();
      this.state.addScoredRow(guess, result.tiles ?? [], result.status);
      this.saveStored();
      this.renderAll();
      if (result.status !== 'in_progress') {
        await this.finishFlow();
      }
    } catch (err) {
      if (this.state.phase === 'revealing') this.state.phase = 'entering';
      this.notice(
        err instanceof ApiError ? 'Servera kļūda — mēģini vēlreiz' : 'Tīkla kļūda — mēģini vēlreiz',
      );
    } finally {
      this.busy = false;
    }
  }

  /** Finalize the finished game and open the result dialog. */
  async finishFlow(): Promise<void> {
    const token = this.state.token;
    if (token === null || this.state.phase !== 'finished') return;
    try {
      const result = await this.api.finalize(token);
      await this.openResultDialog(result);
    } catch {
      this.openRetryDialog();
    }
  }

  typeLetter(letter: string): void {
    if (this.state.typeLetter(letter)) this.renderBoard();
  }

  backspace(): void {
    if (this.state.backspace()) this.renderBoard();
  }

  destroy(): void {
    this.doc.removeEventListener('keydown', this.onKeydown);
  }

  // ----- input -----

  private onKeydown = (event: KeyboardEvent): void => {
    if (event.key === 'Enter') {
      void this.submitEntry();
      return;
    }
    if (event.key === 'Backspace') {
      this.backspace();
      return;
    }
    const letter = letterForKey(event.key);
    if (letter !== null) this.typeLetter(letter);
  };

  private onScreenKey(key: string): void {
    if (key === 'ENTER') {
      void this.submitEntry();
    } else if (key === 'BACK') {
      this.backspace();
    } else {
      this.typeLetter(key);
    }
  }

  // ----- persistence -----

  private clientId(): string {
    if (this.storage === null) return randomClientId();
    let id = this.storage.getItem(CLIENT_KEY);
    if (id === null) {
      id = randomClientId();
      this.storage.setItem(CLIENT_KEY, id);
    }
    return id;
  }

  private loadStored(): StoredGame | null {
    const raw = this.storage?.getItem(STORAGE_KEY);
    if (raw === null || raw === undefined) return null;
    try {
      return JSON.parse(raw) as StoredGame;
    } catch {
      return null;
    }
  }

  private saveStored(): void {
    const stored = this.state.toStored();
    if (stored !== null) this.storage?.setItem(STORAGE_KEY, JSON.stringify(stored));
  }

  // ----- rendering -----

  private renderShell(): void {
    this.root.innerHTML = '';
    this.root.classList.add('vardle');

    const header = this.el('header', 'header');
    header.append(this.el('h1', 'title', 'Vārdulis'));
    this.noticeEl = this.el('div', 'notice');
    this.noticeEl.setAttribute('role', 'status');
    this.boardEl = this.el('div', 'board');
    this.keyboardEl = this.el('div', 'keyboard');
    this.dialogEl = this.el('div', 'dialog-backdrop hidden');
    this.root.append(header, this.noticeEl, this.boardEl, this.keyboardEl, this.dialogEl);
    this.renderAll();
  }

  private renderAll(): void {
    this.renderBoard();
    this.renderKeyboard();
  }

  private renderBoard(): void {
    this.boardEl.innerHTML = '';
    for (const row of this.state.board()) {
      const rowEl = this.el('div', 'row');
      for (const cell of row) {
        const cellEl = this.el('div', 'cell', cell.letter);
        cellEl.dataset.state = cell.state;
        rowEl.append(cellEl);
      }
      this.boardEl.append(rowEl);
    }
  }

  private renderKeyboard(): void {
    this.keyboardEl.innerHTML = '';
    const hints = this.state.hints();
    for (const rowKeys of KEYBOARD_ROWS) {
      const rowEl = this.el('div', 'kb-row');
      for (const key of rowKeys) {
        const button = this.doc.createElement('button');
        button.className = key.length === 1 ? 'key' : 'key key-wide';
        button.textContent = key === 'BACK' ? '⌫' : key;
        button.dataset.key = key;
        const hint = hints.get(key);
        if (hint !== undefined) button.dataset.hint = hint;
        button.addEventListener('click', () => this.onScreenKey(key));
        rowEl.append(button);
      }
      this.keyboardEl.append(rowEl);
    }
  }

  private notice(text: string, clearAfterMs = 2500): void {
    this.noticeEl.textContent = text;
    if (this.noticeTimer !== null) clearTimeout(this.noticeTimer);
    if (clearAfterMs > 0) {
      this.noticeTimer = setTimeout(() => {
        this.noticeEl.textContent = '';
      }, clearAfterMs);
    }
  }

  private async revealPause(): Promise<void> {
    if (this.revealDelayMs <= 0) return;
    await new Promise((resolve) => setTimeout(resolve, this.revealDelayMs * COLS));
  }

  private async openResultDialog(result: FinalizeResponse): Promise<void> {
    const dialog = this.el('div', 'dialog');
    const heading = this.state.status === 'won' ? 'Uzvara!' : 'Šoreiz neizdevās';
    dialog.append(this.el('h2', 'dialog-title', heading));

    const answer = this.el('p', 'answer');
    answer.append('Dienas vārds: ');
    const link = this.doc.createElement('a');
    link.className = 'thesaurus-link';
    link.href = result.thesaurus_url;
    link.target = '_blank';
    link.rel = 'noopener';
    link.textContent = result.answer;
    answer.append(link);
    dialog.append(answer);

    const share = this.doc.createElement('button');
    share.className = 'share-button';
    share.textContent = 'Dalīties';
    share.addEventListener('click', () => {
      void this.copyText(result.share_text).then(
        () => this.notice('Rezultāts nokopēts!'),
        () => this.notice('Neizdevās nokopēt'),
      );
    });
    dialog.append(share);

    const statsEl = this.el('div', 'stats');
    dialog.append(statsEl);
    this.appendCloseButton(dialog);
    this.showDialog(dialog);
    await this.renderStats(statsEl);
  }

  private openRetryDialog(): void {
    const dialog = this.el('div', 'dialog');
    dialog.append(this.el('p', 'dialog-title', 'Neizdevās saglabāt rezultātu'));
    const retry = this.doc.createElement('button');
    retry.className = 'retry-button';
    retry.textContent = 'Mēģināt vēlreiz';
    retry.addEventListener('click', () => {
      this.hideDialog();
      void this.finishFlow();
    });
    dialog.append(retry);
    this.appendCloseButton(dialog);
    this.showDialog(dialog);
  }

  private async renderStats(container: HTMLElement): Promise<void> {
    if (this.state.puzzleId === null) return;
    try {
      const stats = await this.api.stats(this.state.puzzleId);
      const total = Object.values(stats.counts).reduce((a, b) => a + b, 0);
      container.append(this.el('h3', 'stats-title', 'Šodienas minējumi'));
      for (const key of DIST_KEYS) {
        const count = stats.counts[key] ?? 0;
        const rowEl = this.el('div', 'stats-row');
        rowEl.append(this.el('span', 'stats-label', key));
        const bar = this.el('div', 'stats-bar');
        bar.style.width = total > 0 ? `${Math.max(4, (100 * count) / total)}%` : '4%';
        bar.textContent = String(count);
        rowEl.append(bar);
        container.append(rowEl);
      }
    } catch {
      container.append(this.el('p', 'stats-error', 'Statistika nav pieejama'));
    }
  }

  private appendCloseButton(dialog: HTMLElement): void {
    const close = this.doc.createElement('button');
    close.className = 'close-button';
    close.textContent = 'Aizvērt';
    close.addEventListener('click', () => this.hideDialog());
    dialog.append(close);
  }

  private showDialog(dialog: HTMLElement): void {
    this.dialogEl.innerHTML = '';
    this.dialogEl.append(dialog);
    this.dialogEl.classList.remove('hidden');
  }

  private hideDialog(): void {
    this.dialogEl.classList.add('hidden');
  }

  private el(tag: string, className: string, text?: string): HTMLElement {
    const element = this.doc.createElement(tag);
    element.className = className;
    if (text !== undefined) element.textContent = text;
    return element;
  }
}
