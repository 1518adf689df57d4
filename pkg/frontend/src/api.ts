/** Typed client for the game service HTTP API. */

export type TileValue = 'green' | 'orange' | 'grey';
export type GameStatus = 'in_progress' | 'won' | 'lost';

export interface TodayResponse {
  puzzle_id: number;
  date: string;
}

export interface GuessResponse {
  valid: boolean;
  reason?: string;
  tiles?: TileValue[];
  turn: number;
  status: GameStatus;
}

export interface FinalizeResponse {
  answer: string;
  thesaurus_url: string;
  share_text: string;
  already_logged: boolean;
}

export interface StatsResponse {
  puzzle_id: number;
  counts: Record<string, number>;
  fractions: Record<string, number>;
  top_openers?: { word: string; count: number }[];
}

/** Error carrying the HTTP status so callers can tell 4xx contract errors
 * from transport failures (which surface as TypeError from fetch). */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class Api {
  constructor(private readonly baseUrl: string = '') {}

  async today(): Promise<TodayResponse> {
    return this.request('GET', '/api/puzzle/today');
  }

  async openSession(clientId: string): Promise<string> {
    const body = await this.request<{ token: string }>('POST', '/api/session', {
      client_id: clientId,
    });
    return body.token;
  }

  async submitGuess(token: string, guess: string): Promise<GuessResponse> {
    return this.request('POST', `/api/session/${encodeURIComponent(token)}/guess`, { guess });
  }

  async finalize(token: string): Promise<FinalizeResponse> {
    return this.request('POST', `/api/session/${encodeURIComponent(token)}/finalize`);
  }

  async stats(puzzleId: number): Promise<StatsResponse> {
    return this.request('GET', `/api/stats/${puzzleId}`);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(response.status, `${method} ${path}: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }
}
