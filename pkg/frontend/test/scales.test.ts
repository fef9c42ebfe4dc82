import { describe, expect, it } from "vitest";

import {
  EDGE_WIDTH_MAX,
  EDGE_WIDTH_MIN,
  NODE_RADIUS_MAX,
  NODE_RADIUS_MIN,
  confidenceBadge,
  radiusScale,
  widthScale,
} from "../src/scales.js";

describe("radiusScale", () => {
  it("is monotone in paper count", () => {
    const counts = [45, 120, 300, 1800];
    const r = radiusScale(counts);
    const radii = counts.map(r);
    for (let i = 1; i < radii.length; i++) {
      expect(radii[i]!).toBeGreaterThan(radii[i - 1]!);
    }
  });

  it("maps equal counts to equal radii", () => {
    const r = radiusScale([100, 100, 250]);
    expect(r(100)).toBe(r(100));
  });

  it("stays within bounds", () => {
    const counts = [1, 50, 5000];
    const r = radiusScale(counts);
    for (const c of counts) {
      expect(r(c)).toBeGreaterThanOrEqual(NODE_RADIUS_MIN);
      expect(r(c)).toBeLessThanOrEqual(NODE_RADIUS_MAX);
    }
  });

  it("degenerates to a constant for identical counts", () => {
    const r = radiusScale([70, 70, 70]);
    expect(r(70)).toBe((NODE_RADIUS_MIN + NODE_RADIUS_MAX) / 2);
  });
});

describe("widthScale", () => {
  it("is monotone in citations and bounded", () => {
    const values = [0, 3, 11, 400];
    const w = widthScale(values);
    const widths = values.map(w);
    for (let i = 1; i < widths.length; i++) {
      expect(widths[i]!).toBeGreaterThan(widths[i - 1]!);
    }
    expect(Math.min(...widths)).toBeGreaterThanOrEqual(EDGE_WIDTH_MIN);
    expect(Math.max(...widths)).toBeLessThanOrEqual(EDGE_WIDTH_MAX);
  });
});

describe("confidenceBadge", () => {
  it("renders two decimals in the 0.50-1.00 style", () => {
    expect(confidenceBadge(0.5)).toBe("0.50");
    expect(confidenceBadge(0.931)).toBe("0.93");
    expect(confidenceBadge(0.999)).toBe("1.00");
  });
});
