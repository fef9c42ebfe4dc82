import type { GraphPayload } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export const VIEW_W = 760;
export const VIEW_H = 520;

const ITERATIONS = 120;
const REPULSION = 12000;
const SPRING = 0.015;
const SPRING_LENGTH = 170;
const CENTER_PULL = 0.02;

/** Deterministic seed from the payload so identical payloads lay out identically. */
function payloadSeed(payload: GraphPayload): number {
  let h = 2166136261;
  for (const node of payload.nodes) {
    for (let i = 0; i < node.id.length; i++) {
      h ^= node.id.charCodeAt(i);
      h = Math.imul(h, 16777619);
    }
  }
  return h >>> 0;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Small force-directed layout: seeded ring start, pair repulsion, springs on
 * edges, gentle pull to the center. Pure function of the payload.
 */
export function layoutGraph(payload: GraphPayload): Map<string, Point> {
  const rand = mulberry32(payloadSeed(payload));
  const cx = VIEW_W / 2;
  const cy = VIEW_H / 2;
  const nodes = payload.nodes;
  const pts: Point[] = nodes.map((_, i) => {
    const angle = (2 * Math.PI * i) / Math.max(nodes.length, 1) + rand() * 0.5;
    const r = nodes.length === 1 ? 0 : 150 + rand() * 40;
    return { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) };
  });
  const index = new Map(nodes.map((n, i) => [n.id, i]));
  const links: Array<[number, number]> = [];
  const seen = new Set<string>();
  for (const e of payload.edges) {
    const a = index.get(e.from);
    const b = index.get(e.to);
    if (a === undefined || b === undefined || a === b) continue;
    const key = a < b ? `${a}-${b}` : `${b}-${a}`;
    if (!seen.has(key)) {
      seen.add(key);
      links.push([a, b]);
    }
  }

  for (let step = 0; step < ITERATIONS; step++) {
    const cool = 1 - step / ITERATIONS;
    for (let i = 0; i < pts.length; i++) {
      for (let j = i + 1; j < pts.length; j++) {
        const pi = pts[i]!;
        const pj = pts[j]!;
        const dx = pi.x - pj.x;
        const dy = pi.y - pj.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const f = (REPULSION / d2) * cool;
        const d = Math.sqrt(d2);
        pi.x += (dx / d) * f;
        pi.y += (dy / d) * f;
        pj.x -= (dx / d) * f;
        pj.y -= (dy / d) * f;
      }
    }
    for (const [a, b] of links) {
      const pa = pts[a]!;
      const pb = pts[b]!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const f = SPRING * (d - SPRING_LENGTH) * cool;
      pa.x += (dx / d) * f;
      pa.y += (dy / d) * f;
      pb.x -= (dx / d) * f;
      pb.y -= (dy / d) * f;
    }
    for (const p of pts) {
      p.x += (cx - p.x) * CENTER_PULL;
      p.y += (cy - p.y) * CENTER_PULL;
    }
  }

  const margin = 40;
  for (const p of pts) {
    p.x = Math.min(Math.max(p.x, margin), VIEW_W - margin);
    p.y = Math.min(Math.max(p.y, margin), VIEW_H - margin);
  }
  return new Map(nodes.map((n, i) => [n.id, pts[i]!]));
}
