/** Sequential yellow-to-red scale (red = high) shared by the heatmaps, the
 * 2D path coloring, and the 3D wall, plus the fixed zone palette. */

function hex(v: number): string {
  return Math.round(v).toString(16).padStart(2, "0");
}

/** t in [0,1] -> color between pale yellow (low) and deep red (high). */
export function yellowRed(t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const r = 255 - 75 * clamped;          // 255 -> 180
  const g = 237 * (1 - clamped) + 18 * clamped; // 237 -> 18
  const b = 160 * (1 - clamped) + 24 * clamped; // 160 -> 24
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}

/** Normalize a value against a [lo, hi] range; constant ranges map to 0. */
export function normalize(value: number, lo: number, hi: number): number {
  if (hi <= lo) return 0;
  return (value - lo) / (hi - lo);
}

export function colorFor(value: number, lo: number, hi: number): string {
  return yellowRed(normalize(value, lo, hi));
}

export const ZONE_COLORS: Record<number, string> = {
  0: "#9aa5b1", // neither behavior: muted gray-blue
  1: "#2f6fdb", // y-dominant: blue
  2: "#d64541", // x-dominant: red
  3: "#8549ba", // hybrid: purple
};

export const ZONE_LABELS: Record<number, string> = {
  0: "zone 0 (neither)",
  1: "zone 1 (y-dominant)",
  2: "zone 2 (x-dominant)",
  3: "zone 3 (hybrid)",
};
