// Visual encodings. Both scales are monotone non-decreasing by construction
// (sqrt keeps areas readable) and map equal inputs to equal outputs.

export const NODE_RADIUS_MIN = 10;
export const NODE_RADIUS_MAX = 34;
export const EDGE_WIDTH_MIN = 1;
export const EDGE_WIDTH_MAX = 9;

function sqrtScale(
  values: number[],
  lo: number,
  hi: number,
): (value: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  if (!values.length || max === min) {
    const mid = (lo + hi) / 2;
    return () => mid;
  }
  const span = Math.sqrt(max) - Math.sqrt(min);
  return (value) => {
    const t = (Math.sqrt(value) - Math.sqrt(min)) / span;
    return lo + t * (hi - lo);
  };
}

/** Node radius from journal paper counts. */
export function radiusScale(paperCounts: number[]): (count: number) => number {
  return sqrtScale(paperCounts, NODE_RADIUS_MIN, NODE_RADIUS_MAX);
}

/** Edge stroke width from per-year citation counts. */
export function widthScale(citations: number[]): (count: number) => number {
  return sqrtScale(citations, EDGE_WIDTH_MIN, EDGE_WIDTH_MAX);
}

/** Confidence badge text, always two decimals in [0.50, 1.00). */
export function confidenceBadge(confidence: number): string {
  return confidence.toFixed(2);
}
