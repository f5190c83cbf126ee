// Snapshot tests on recorded service payloads: identical payloads must
// yield identical markup, and the projections must mirror the payload.

import { readFileSync } from 'node:fs';
import { join, dirname } from 'node:path';
import { fileURLToPath } from 'node:url';
import { describe, expect, it } from 'vitest';

import { buildBoard, renderStateHTML } from '../src/board.js';
import { parseStateView } from '../src/types.js';
import { traceSteps } from '../src/watch.js';

const here = dirname(fileURLToPath(import.meta.url));

function fixture(name: string) {
  const raw = readFileSync(join(here, '..', 'fixtures', name), 'utf-8');
  return parseStateView(JSON.parse(raw));
}

describe('board rendering', () => {
  for (const name of ['fresh_k2.json', 'midgame_k2.json', 'finished_k2.json']) {
    it(`renders ${name} deterministically`, () => {
      const view = fixture(name);
      const html = renderStateHTML(view);
      expect(html).toMatchSnapshot();
      expect(renderStateHTML(view)).toBe(html);
    });
  }

  it('shows one gap marker per insertion point', () => {
    const view = fixture('fresh_k2.json');
    const model = buildBoard(view);
    expect(model.gaps.length).toBe(view.order.length + 1);
    expect(model.gaps.length).toBe(4);
    expect(model.arcs.length).toBe(3);
  });

  it('highlights the pending clique and ghosts its edges', () => {
    const view = fixture('fresh_k2.json');
    const model = buildBoard(view);
    expect(model.pending).not.toBeNull();
    expect(model.pending!.adjacentXs.length).toBe(view.pending!.adjacent.length);
    const highlighted = model.vertices.filter((v) => v.inClique).map((v) => v.token);
    expect(highlighted.sort()).toEqual([...view.pending!.adjacent].sort());
  });

  it('marks exactly the service-reported witness arcs', () => {
    const view = fixture('finished_k2.json');
    const model = buildBoard(view);
    const witnessArcs = model.arcs.filter((a) => a.witness);
    expect(witnessArcs.length).toBe(view.rainbow.witness.length);
    const expected = new Set(
      view.rainbow.witness.map(([u, v]) => (u < v ? `${u}|${v}` : `${v}|${u}`)),
    );
    for (const arc of witnessArcs) {
      const key = arc.u < arc.v ? `${arc.u}|${arc.v}` : `${arc.v}|${arc.u}`;
      expect(expected.has(key)).toBe(true);
    }
  });

  it('shows the verdict banner only when finished', () => {
    expect(buildBoard(fixture('fresh_k2.json')).banner).toBeNull();
    const banner = buildBoard(fixture('finished_k2.json')).banner;
    expect(banner).not.toBeNull();
    expect(banner!.kind).toBe('alice_win');
    expect(renderStateHTML(fixture('finished_k2.json'))).toContain('banner-alice_win');
  });

  it('nested arcs get proportionally taller', () => {
    const view = fixture('finished_k2.json');
    const model = buildBoard(view);
    for (const outer of model.arcs) {
      for (const inner of model.arcs) {
        if (outer.x1 < inner.x1 && inner.x2 < outer.x2) {
          expect(outer.height).toBeGreaterThan(inner.height);
        }
      }
    }
  });

  it('rejects malformed payloads before rendering', () => {
    expect(() => parseStateView({ id: 'x' })).toThrowError();
    expect(() => parseStateView(null)).toThrowError();
    const good = JSON.parse(
      readFileSync(join(here, '..', 'fixtures', 'fresh_k2.json'), 'utf-8'),
    );
    good.gaps = 99; // inconsistent with the order length
    expect(() => parseStateView(good)).toThrowError();
  });
});

describe('watch mode', () => {
  it('replays the recorded trace to the recorded final order', () => {
    const raw = JSON.parse(
      readFileSync(join(here, '..', 'fixtures', 'finished_k2.json'), 'utf-8'),
    );
    const finished = parseStateView(raw);
    const steps = traceSteps(finished.trace!);
    expect(steps.length).toBe(finished.trace!.moves.length + 1);
    const last = steps[steps.length - 1]!;
    expect(last.view.order).toEqual(finished.order);
    expect(last.view.status).toBe('finished');
    expect(last.view.outcome?.type).toBe('alice_win');
    // Intermediate steps never claim a verdict of their own.
    for (const step of steps.slice(0, -1)) {
      expect(step.view.outcome).toBeNull();
    }
  });
});
