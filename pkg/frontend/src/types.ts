// Service payload shapes, validated before any rendering happens.

export type EdgePair = [string, string];

export interface PendingView {
  v: string;
  adjacent: string[];
}

export interface RainbowView {
  size: number;
  target: number;
  witness: EdgePair[];
}

export interface OutcomeView {
  type: 'alice_win' | 'cap_exceeded' | 'anomaly';
  rounds: number;
  witness?: EdgePair[];
  description?: string;
}

export interface TraceMoveAlice {
  alice: { clique: string[]; v: string };
}
export interface TraceMoveBob {
  bob: { pos: number };
}
export type TraceMove = TraceMoveAlice | TraceMoveBob;

export interface TraceView {
  k: number;
  initial_order: string[];
  moves: TraceMove[];
  outcome: OutcomeView | null;
}

export interface StateView {
  id: string;
  k: number;
  status: 'open' | 'finished';
  round: number;
  order: string[];
  edges: EdgePair[];
  pending: PendingView | null;
  gaps: number;
  rainbow: RainbowView;
  outcome: OutcomeView | null;
  trace?: TraceView;
}

export class PayloadError extends Error {}

function fail(message: string): never {
  throw new PayloadError(message);
}

function asStringArray(value: unknown, what: string): string[] {
  if (!Array.isArray(value) || value.some((x) => typeof x !== 'string')) {
    fail(`${what} must be an array of strings`);
  }
  return value as string[];
}

function asEdges(value: unknown, what: string): EdgePair[] {
  if (!Array.isArray(value)) fail(`${what} must be an array`);
  return (value as unknown[]).map((entry) => {
    if (!Array.isArray(entry) || entry.length !== 2
        || typeof entry[0] !== 'string' || typeof entry[1] !== 'string') {
      fail(`${what} entries must be [string, string]`);
    }
    return [entry[0], entry[1]] as EdgePair;
  });
}

function asOutcome(value: unknown): OutcomeView | null {
  if (value === null || value === undefined) return null;
  const o = value as Record<string, unknown>;
  if (o.type !== 'alice_win' && o.type !== 'cap_exceeded' && o.type !== 'anomaly') {
    fail('outcome.type unknown');
  }
  if (typeof o.rounds !== 'number') fail('outcome.rounds must be a number');
  const out: OutcomeView = { type: o.type, rounds: o.rounds };
  if (o.witness !== undefined) out.witness = asEdges(o.witness, 'outcome.witness');
  if (typeof o.description === 'string') out.description = o.description;
  return out;
}

/** Validate a service payload; throws PayloadError so the caller can show
 *  an error banner instead of a partial render. */
export function parseStateView(data: unknown): StateView {
  if (typeof data !== 'object' || data === null) fail('payload is not an object');
  const d = data as Record<string, unknown>;
  if (typeof d.id !== 'string') fail('id missing');
  if (typeof d.k !== 'number') fail('k missing');
  if (d.status !== 'open' && d.status !== 'finished') fail('status unknown');
  if (typeof d.round !== 'number') fail('round missing');
  const order = asStringArray(d.order, 'order');
  const edges = asEdges(d.edges, 'edges');
  if (typeof d.gaps !== 'number' || d.gaps !== order.length + 1) {
    fail('gaps must equal order length + 1');
  }
  let pending: PendingView | null = null;
  if (d.pending !== null && d.pending !== undefined) {
    const p = d.pending as Record<string, unknown>;
    if (typeof p.v !== 'string') fail('pending.v missing');
    pending = { v: p.v, adjacent: asStringArray(p.adjacent, 'pending.adjacent') };
  }
  const r = d.rainbow as Record<string, unknown> | undefined;
  if (!r || typeof r.size !== 'number' || typeof r.target !== 'number') {
    fail('rainbow meter missing');
  }
  const rainbow: RainbowView = {
    size: r.size,
    target: r.target,
    witness: asEdges(r.witness ?? [], 'rainbow.witness'),
  };
  return {
    id: d.id,
    k: d.k,
    status: d.status,
    round: d.round,
    order,
    edges,
    pending,
    gaps: d.gaps,
    rainbow,
    outcome: asOutcome(d.outcome),
    trace: d.trace as TraceView | undefined,
  };
}
