// Watch mode: step through a recorded trace.  Rebuilding the order and
// edge list from recorded moves is mechanical bookkeeping; rainbows and
// verdicts are never recomputed here, only the trace's recorded outcome
// is shown on the final step.

import type { EdgePair, StateView, TraceView } from './types.js';

export interface WatchStep {
  view: StateView;
  label: string;
}

function snapshot(
  trace: TraceView,
  order: string[],
  edges: EdgePair[],
  round: number,
  pending: { v: string; adjacent: string[] } | null,
  final: boolean,
  label: string,
): WatchStep {
  const outcome = final ? trace.outcome : null;
  const witness = final && trace.outcome?.witness ? trace.outcome.witness : [];
  return {
    label,
    view: {
      id: 'watch',
      k: trace.k,
      status: final ? 'finished' : 'open',
      round,
      order: [...order],
      edges: [...edges],
      pending,
      gaps: order.length + 1,
      rainbow: {
        size: final ? (trace.outcome?.witness?.length ?? 0) : 0,
        target: trace.k + 1,
        witness,
      },
      outcome,
    },
  };
}

/** Expand a trace into renderable steps, one per move. */
export function traceSteps(trace: TraceView): WatchStep[] {
  const order = [...trace.initial_order];
  const edges: EdgePair[] = [];
  for (let i = 0; i < order.length; i += 1) {
    for (let j = i + 1; j < order.length; j += 1) {
      edges.push([order[i]!, order[j]!]);
    }
  }
  const steps: WatchStep[] = [snapshot(trace, order, edges, 0, null, false, 'start')];
  let round = 0;
  let pending: { v: string; adjacent: string[] } | null = null;
  trace.moves.forEach((move, index) => {
    const last = index === trace.moves.length - 1;
    if ('alice' in move) {
      pending = { v: move.alice.v, adjacent: [...move.alice.clique] };
      steps.push(snapshot(
        trace, order, edges, round, pending, false,
        `Alice stacks ${move.alice.v} on {${move.alice.clique.join(', ')}}`,
      ));
    } else {
      if (!pending) throw new Error('trace has a Bob move without a pending vertex');
      order.splice(move.bob.pos, 0, pending.v);
      for (const u of pending.adjacent) edges.push([pending.v, u]);
      round += 1;
      steps.push(snapshot(
        trace, order, edges, round, null, last,
        `Bob inserts at gap ${move.bob.pos}`,
      ));
      pending = null;
    }
  });
  return steps;
}
