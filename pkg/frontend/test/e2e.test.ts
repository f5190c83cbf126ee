// End to end against the real Python service: spawn it, create a k=2
// session, play the leftmost-gap human policy to completion through the
// client, and check the rendered verdict against the service witness.

import { spawn, type ChildProcess } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { GameClient, IllegalMove, SessionGone } from '../src/api.js';
import { buildBoard, renderStateHTML } from '../src/board.js';

const PORT = 8765 + (process.pid % 100);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/sessions/probe`);
      if (response.status === 404) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error('game service did not come up');
}

beforeAll(async () => {
  server = spawn(
    'python3',
    ['-m', 'qnlay.cli', 'game', 'serve', '--port', String(PORT)],
    { stdio: 'ignore' },
  );
  await waitForService();
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe('human session against the live service', () => {
  const client = new GameClient(BASE);

  it('plays the leftmost-gap policy to an alice_win verdict', async () => {
    let view = await client.createSession(2, 'human');
    expect(view.status).toBe('open');
    expect(view.round).toBe(0);
    expect(view.order.length).toBe(3);
    expect(view.pending).not.toBeNull();

    let rounds = 0;
    while (view.status === 'open') {
      view = await client.submitMove(view.id, 0);
      rounds += 1;
      expect(rounds).toBeLessThan(200);
    }

    expect(view.outcome?.type).toBe('alice_win');
    const witness = view.outcome?.witness ?? [];
    expect(witness.length).toBe(3);

    // The rendered board highlights exactly the witness arcs and shows
    // the verdict banner.
    const model = buildBoard(view);
    const highlighted = model.arcs
      .filter((arc) => arc.witness)
      .map((arc) => (arc.u < arc.v ? `${arc.u}|${arc.v}` : `${arc.v}|${arc.u}`))
      .sort();
    const expected = witness
      .map(([u, v]) => (u < v ? `${u}|${v}` : `${v}|${u}`))
      .sort();
    expect(highlighted).toEqual(expected);
    expect(model.banner?.kind).toBe('alice_win');

    const html = renderStateHTML(view);
    expect(html).toContain('banner-alice_win');
    expect((html.match(/class="arc witness"/g) ?? []).length).toBe(3);

    // Moving after the verdict is refused by the service.
    await expect(client.submitMove(view.id, 0)).rejects.toBeInstanceOf(SessionGone);
    await client.deleteSession(view.id);
  }, 30_000);

  it('surfaces illegal moves without changing the board', async () => {
    const view = await client.createSession(2, 'human');
    await expect(client.submitMove(view.id, 99)).rejects.toBeInstanceOf(IllegalMove);
    const unchanged = await client.getSession(view.id);
    expect(unchanged.round).toBe(0);
    expect(unchanged.order).toEqual(view.order);
    await client.deleteSession(view.id);
  });

  it('k selector range plays at k=3 and k=4 too', async () => {
    for (const k of [3, 4]) {
      let view = await client.createSession(k, 'human');
      let rounds = 0;
      while (view.status === 'open') {
        view = await client.submitMove(view.id, view.round % view.gaps);
        rounds += 1;
        expect(rounds).toBeLessThan(500);
      }
      expect(view.outcome?.type).toBe('alice_win');
      expect(view.outcome?.witness?.length).toBe(k + 1);
      await client.deleteSession(view.id);
    }
  }, 60_000);
});
