/** The 33-letter Latvian alphabet and the on-screen keyboard layout. */

import type { TileValue } from './api.js';

export const ALPHABET = [
  'A', 'Ā', 'B', 'C', 'Č', 'D', 'E', 'Ē', 'F', 'G', 'Ģ',
  'H', 'I', 'Ī', 'J', 'K', 'Ķ', 'L', 'Ļ', 'M', 'N', 'Ņ',
  'O', 'P', 'R', 'S', 'Š', 'T', 'U', 'Ū', 'V', 'Z', 'Ž',
] as const;

const ALPHABET_SET = new Set<string>(ALPHABET);

/** QWERTY-flavoured rows minus Q/W/X/Y, diacritics next to their bases.
 * Every alphabet letter appears exactly once. */
export const KEYBOARD_ROWS: string[][] = [
  ['E', 'Ē', 'R', 'T', 'U', 'Ū', 'I', 'Ī', 'O', 'P'],
  ['A', 'Ā', 'S', 'Š', 'D', 'F', 'G', 'Ģ', 'H', 'J', 'K', 'Ķ', 'L', 'Ļ'],
  ['ENTER', 'Z', 'Ž', 'C', 'Č', 'V', 'B', 'N', 'Ņ', 'M', 'BACK'],
];

export function isAlphabetLetter(value: string): boolean {
  return ALPHABET_SET.has(value);
}

/** Map a physical key press to an alphabet letter, or null to ignore it.
 * Latvian layouts send the diacritic letters directly; everything else is
 * uppercased and checked against the alphabet. */
export function letterForKey(key: string): string | null {
  if (key.length !== 1) return null;
  const letter = key.toUpperCase().normalize('NFC');
  return ALPHABET_SET.has(letter) ? letter : null;
}

const HINT_RANK: Record<TileValue, number> = { grey: 0, orange: 1, green: 2 };

/** Best state seen per letter across scored rows: green > orange > grey. */
export function keyboardHints(
  rows: { guess: string; tiles: TileValue[] }[],
): Map<string, TileValue> {
  const hints = new Map<string, TileValue>();
  for (const row of rows) {
    for (let i = 0; i < row.guess.length; i++) {
      const letter = row.guess[i];
      const tile = row.tiles[i];
      const seen = hints.get(letter);
      if (seen === undefined || HINT_RANK[tile] > HINT_RANK[seen]) {
        hints.set(letter, tile);
      }
    }
  }
  return hints;
}
