/** Decision-boundary geometry for the scatter background.
 *
 * Drawing only: the regions visualize x<0.5 & y<0.5 (zone 0), the x = y - 0.5
 * and y = x - 0.5 diagonals, and the hybrid remainder. Rendered points are
 * always colored by the zone the server assigned, never recomputed here. */

export interface Region {
  zone: number;
  /** polygon vertices in score space, [x, y] pairs */
  points: [number, number][];
}

export const ZONE_REGIONS: Region[] = [
  { zone: 0, points: [[0, 0], [0.5, 0], [0.5, 0.5], [0, 0.5]] },
  // y > 0.5 and x < y - 0.5: triangle pinched at (0, 0.5)
  { zone: 1, points: [[0, 0.5], [0.5, 1], [0, 1]] },
  // x > 0.5 and y < x - 0.5: mirror triangle
  { zone: 2, points: [[0.5, 0], [1, 0], [1, 0.5]] },
  // hybrid: unit square minus the three regions above, walked along the
  // zone-0 edges, up the zone-1 diagonal, across the top, down to the
  // zone-2 diagonal
  {
    zone: 3,
    points: [[0.5, 0], [0.5, 0.5], [0, 0.5], [0.5, 1], [1, 1], [1, 0.5]],
  },
];

/** Boundary polylines: the two half-axis lines and the two diagonals. */
export const BOUNDARY_LINES: [number, number][][] = [
  [[0.5, 0], [0.5, 0.5]],
  [[0, 0.5], [0.5, 0.5]],
  [[0, 0.5], [0.5, 1]],
  [[0.5, 0], [1, 0.5]],
];

export function svgPoints(points: [number, number][], size: number): string {
  return points
    .map(([x, y]) => `${(x * size).toFixed(1)},${((1 - y) * size).toFixed(1)}`)
    .join(" ");
}
