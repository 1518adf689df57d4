/** Pure view-state for one game: scored rows, the partial entry, the phase.
 * No DOM access here, so the whole game flow is unit-testable. */

import type { GameStatus, TileValue } from './api.js';
import { isAlphabetLetter, keyboardHints } from './letters.js';

export const ROWS = 6;
export const COLS = 5;

export type Phase = 'entering' | 'revealing' | 'finished';

export interface ScoredRow {
  guess: string;
  tiles: TileValue[];
}

export type CellState = TileValue | 'pending' | 'empty';

export interface Cell {
  letter: string;
  state: CellState;
}

export interface StoredGame {
  date: string;
  token: string;
  rows: ScoredRow[];
  status: GameStatus;
}

export class ViewState {
  phase: Phase = 'entering';
  status: GameStatus = 'in_progress';
  token: string | null = null;
  puzzleId: number | null = null;
  date: string | null = null;
  rows: ScoredRow[] = [];
  entry = '';

  typeLetter(letter: string): boolean {
    if (this.phase !== 'entering' || this.entry.length >= COLS) return false;
    if (!isAlphabetLetter(letter)) return false;
    this.entry += letter;
    return true;
  }

  backspace(): boolean {
    if (this.phase !== 'entering' || this.entry.length === 0) return false;
    this.entry = this.entry.slice(0, -1);
    return true;
  }

  /** Record a scored row relayed by the service and clear the entry. */
  addScoredRow(guess: string, tiles: TileValue[], status: GameStatus): void {
    this.rows.push({ guess, tiles });
    this.entry = '';
    this.status = status;
    this.phase = status === 'in_progress' ? 'entering' : 'finished';
  }

  /** 6×5 board: scored rows, then the entry row, then empty rows. */
  board(): Cell[][] {
    const board: Cell[][] = [];
    for (const row of this.rows) {
      board.push(
        [...row.guess].map((letter, i) => ({ letter, state: row.tiles[i] })),
      );
    }
    if (board.length < ROWS && this.status === 'in_progress') {
      const entryRow: Cell[] = [...this.entry].map((letter) => ({
        letter,
        state: 'pending',
      }));
      while (entryRow.length < COLS) entryRow.push({ letter: '', state: 'empty' });
      board.push(entryRow);
    }
    while (board.length < ROWS) {
      board.push(Array.from({ length: COLS }, () => ({ letter: '', state: 'empty' as const })));
    }
    return board;
  }

  hints(): Map<string, TileValue> {
    return keyboardHints(this.rows);
  }

  toStored(): StoredGame | null {
    if (this.token === null || this.date === null) return null;
    return { date: this.date, token: this.token, rows: this.rows, status: this.status };
  }

  /** Rebuild state from a stored game of the same day. */
  static fromStored(stored: StoredGame, puzzleId: number): ViewState {
    const state = new ViewState();
    state.token = stored.token;
    state.puzzleId = puzzleId;
    state.date = stored.date;
    state.rows = stored.rows;
    state.status = stored.status;
    state.phase = stored.status === 'in_progress' ? 'entering' : 'finished';
    return state;
  }
}
