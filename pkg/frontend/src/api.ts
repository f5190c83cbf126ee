// Thin typed client for the game service; all judgments stay server-side.

import { parseStateView, type StateView } from './types.js';

export class IllegalMove extends Error {}
export class SessionGone extends Error {
  constructor(message: string, public readonly status: number) {
    super(message);
  }
}

async function detailOf(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === 'string') return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return response.statusText;
  }
}

export class GameClient {
  constructor(private readonly baseUrl: string = '') {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  private async checked(response: Response): Promise<StateView> {
    if (response.status === 422) throw new IllegalMove(await detailOf(response));
    if (response.status === 404 || response.status === 409) {
      throw new SessionGone(await detailOf(response), response.status);
    }
    if (!response.ok) {
      throw new Error(`service error ${response.status}: ${await detailOf(response)}`);
    }
    return parseStateView(await response.json());
  }

  async createSession(k: number, bob = 'human', seed = 0): Promise<StateView> {
    const response = await fetch(this.url('/sessions'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ k, bob, seed }),
    });
    return this.checked(response);
  }

  async getSession(id: string): Promise<StateView> {
    return this.checked(await fetch(this.url(`/sessions/${id}`)));
  }

  async submitMove(id: string, gap: number): Promise<StateView> {
    const response = await fetch(this.url(`/sessions/${id}/bob-move`), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ pos: gap }),
    });
    return this.checked(response);
  }

  async deleteSession(id: string): Promise<void> {
    await fetch(this.url(`/sessions/${id}`), { method: 'DELETE' });
  }
}
