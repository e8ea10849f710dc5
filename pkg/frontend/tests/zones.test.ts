import { describe, expect, it } from "vitest";

import { BOUNDARY_LINES, ZONE_REGIONS, svgPoints } from "../src/zones.js";

function polygonArea(points: [number, number][]): number {
  let area = 0;
  for (let i = 0; i < points.length; i++) {
    const [x1, y1] = points[i];
    const [x2, y2] = points[(i + 1) % points.length];
    area += x1 * y2 - x2 * y1;
  }
  return Math.abs(area) / 2;
}

describe("decision-boundary drawing geometry", () => {
  it("has one region per zone inside the unit square", () => {
    expect(ZONE_REGIONS.map((r) => r.zone)).toEqual([0, 1, 2, 3]);
    for (const region of ZONE_REGIONS) {
      for (const [x, y] of region.points) {
        expect(x).toBeGreaterThanOrEqual(0);
        expect(x).toBeLessThanOrEqual(1);
        expect(y).toBeGreaterThanOrEqual(0);
        expect(y).toBeLessThanOrEqual(1);
      }
    }
  });

  it("region areas tile the unit square", () => {
    const areas = ZONE_REGIONS.map((r) => polygonArea(r.points));
    expect(areas[0]).toBeCloseTo(0.25, 10);   // low-low square
    expect(areas[1]).toBeCloseTo(0.125, 10);  // y-dominant triangle
    expect(areas[2]).toBeCloseTo(0.125, 10);  // x-dominant triangle
    expect(areas.reduce((a, b) => a + b, 0)).toBeCloseTo(1.0, 10);
  });

  it("draws the two half lines and the two diagonals", () => {
    expect(BOUNDARY_LINES).toContainEqual([[0.5, 0], [0.5, 0.5]]);
    expect(BOUNDARY_LINES).toContainEqual([[0, 0.5], [0.5, 0.5]]);
    expect(BOUNDARY_LINES).toContainEqual([[0, 0.5], [0.5, 1]]);   // x = y - 0.5
    expect(BOUNDARY_LINES).toContainEqual([[0.5, 0], [1, 0.5]]);   // y = x - 0.5
  });

  it("converts score space to svg space with y flipped", () => {
    expect(svgPoints([[0, 0], [1, 1]], 100)).toBe("0.0,100.0 100.0,0.0");
  });
});
