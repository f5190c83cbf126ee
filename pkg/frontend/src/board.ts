// Pure board geometry and SVG rendering.  Everything displayed here comes
// straight from the service payload; the only client-side computation is
// layout geometry (x positions, arc heights, gap markers).

import type { EdgePair, StateView } from './types.js';

const X_STEP = 56;
const X_MARGIN = 48;
const BASELINE = 190;
const ARC_UNIT = 26;
const PENDING_Y = 34;

export interface BoardModel {
  width: number;
  height: number;
  vertices: { token: string; x: number; inClique: boolean }[];
  arcs: {
    u: string;
    v: string;
    x1: number;
    x2: number;
    height: number;
    witness: boolean;
  }[];
  gaps: { index: number; x: number }[];
  pending: { token: string; x: number; adjacentXs: number[] } | null;
  meter: { size: number; target: number };
  banner: { kind: string; text: string } | null;
  round: number;
}

function vertexX(index: number): number {
  return X_MARGIN + index * X_STEP;
}

function edgeKey([u, v]: EdgePair): string {
  return u < v ? `${u}|${v}` : `${v}|${u}`;
}

/** Project a service state view onto screen coordinates. */
export function buildBoard(view: StateView): BoardModel {
  const position = new Map<string, number>();
  view.order.forEach((token, i) => position.set(token, i));

  // The overlay marks the service-reported witness only.
  const witnessKeys = new Set(view.rainbow.witness.map(edgeKey));
  if (view.outcome?.witness) {
    for (const edge of view.outcome.witness) witnessKeys.add(edgeKey(edge));
  }

  const cliqueMembers = new Set(view.pending?.adjacent ?? []);
  const vertices = view.order.map((token, i) => ({
    token,
    x: vertexX(i),
    inClique: cliqueMembers.has(token),
  }));

  const arcs = view.edges
    .map((edge) => {
      const [u, v] = edge;
      const pu = position.get(u);
      const pv = position.get(v);
      if (pu === undefined || pv === undefined) {
        throw new Error(`edge ${u}-${v} references an unplaced vertex`);
      }
      const [a, b] = pu < pv ? [pu, pv] : [pv, pu];
      return {
        u: view.order[a]!,
        v: view.order[b]!,
        x1: vertexX(a),
        x2: vertexX(b),
        // Height proportional to span, so nesting is visually literal.
        height: (b - a) * ARC_UNIT,
        witness: witnessKeys.has(edgeKey(edge)),
      };
    })
    .sort((p, q) => p.x1 - q.x1 || p.x2 - q.x2);

  const gaps = [];
  for (let i = 0; i < view.gaps; i += 1) {
    gaps.push({ index: i, x: vertexX(i) - X_STEP / 2 });
  }

  let pending = null;
  if (view.pending) {
    const xs = view.pending.adjacent
      .map((token) => position.get(token))
      .filter((p): p is number => p !== undefined)
      .map(vertexX);
    const mid = xs.length ? xs.reduce((s, x) => s + x, 0) / xs.length : vertexX(0);
    pending = { token: view.pending.v, x: mid, adjacentXs: xs };
  }

  let banner = null;
  if (view.status === 'finished' && view.outcome) {
    const text =
      view.outcome.type === 'alice_win'
        ? `Alice wins in round ${view.outcome.rounds}: a ${view.rainbow.target}-rainbow appeared`
        : view.outcome.type === 'cap_exceeded'
          ? `Round cap reached after ${view.outcome.rounds} rounds`
          : `Anomaly: ${view.outcome.description ?? 'unknown'}`;
    banner = { kind: view.outcome.type, text };
  }

  const maxSpan = view.order.length > 1 ? (view.order.length - 1) * ARC_UNIT : ARC_UNIT;
  return {
    width: vertexX(Math.max(view.order.length - 1, 0)) + X_MARGIN,
    height: BASELINE + 46,
    vertices,
    arcs,
    gaps,
    pending,
    meter: { size: view.rainbow.size, target: view.rainbow.target },
    banner,
    round: view.round,
  };
}

function arcPath(x1: number, x2: number, height: number): string {
  const mid = (x1 + x2) / 2;
  const top = Math.max(BASELINE - height, PENDING_Y + 16);
  return `M ${x1} ${BASELINE} Q ${mid} ${top} ${x2} ${BASELINE}`;
}

/** Deterministic SVG for a board model: identical payloads yield identical
 *  markup, which the snapshot tests pin down. */
export function renderBoardSVG(model: BoardModel): string {
  const parts: string[] = [];
  parts.push(
    `<svg class="board" viewBox="0 0 ${model.width} ${model.height}" ` +
      `width="${model.width}" height="${model.height}" ` +
      `xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(`<line class="baseline" x1="${X_MARGIN / 2}" y1="${BASELINE}" ` +
    `x2="${model.width - X_MARGIN / 2}" y2="${BASELINE}"/>`);
  for (const arc of model.arcs) {
    const cls = arc.witness ? 'arc witness' : 'arc';
    parts.push(
      `<path class="${cls}" data-edge="${arc.u}|${arc.v}" ` +
        `d="${arcPath(arc.x1, arc.x2, arc.height)}"/>`,
    );
  }
  if (model.pending) {
    for (const x of model.pending.adjacentXs) {
      parts.push(
        `<line class="ghost" x1="${model.pending.x}" y1="${PENDING_Y}" ` +
          `x2="${x}" y2="${BASELINE}"/>`,
      );
    }
    parts.push(
      `<g class="pending" transform="translate(${model.pending.x} ${PENDING_Y})">` +
        `<circle r="13"/><text dy="4">${model.pending.token}</text></g>`,
    );
  }
  for (const gap of model.gaps) {
    parts.push(
      `<g class="gap" data-gap="${gap.index}" ` +
        `transform="translate(${gap.x} ${BASELINE})">` +
        `<circle r="9"/><text dy="3">+</text></g>`,
    );
  }
  for (const vertex of model.vertices) {
    const cls = vertex.inClique ? 'vertex clique' : 'vertex';
    parts.push(
      `<g class="${cls}" transform="translate(${vertex.x} ${BASELINE})">` +
        `<circle r="14"/><text dy="4">${vertex.token}</text></g>`,
    );
  }
  parts.push('</svg>');
  return parts.join('\n');
}

export function renderMeterHTML(model: BoardModel): string {
  const { size, target } = model.meter;
  const percent = Math.min(100, Math.round((100 * size) / target));
  return (
    `<div class="meter" data-size="${size}" data-target="${target}">` +
    `<span class="meter-label">rainbow ${size} / ${target}</span>` +
    `<span class="meter-bar"><span class="meter-fill" style="width:${percent}%"></span></span>` +
    `</div>`
  );
}

export function renderBannerHTML(model: BoardModel): string {
  if (!model.banner) return '';
  return (
    `<div class="banner banner-${model.banner.kind}" role="status">` +
    `${model.banner.text}</div>`
  );
}

/** Full board fragment: meter, verdict banner, round counter, arc diagram. */
export function renderStateHTML(view: StateView): string {
  const model = buildBoard(view);
  return (
    `<div class="round-counter">round ${model.round}</div>` +
    renderMeterHTML(model) +
    renderBannerHTML(model) +
    renderBoardSVG(model)
  );
}
