import { FEATURE_LAYERS, FeatureName, SampleWindowDoc, TrajectoryDoc } from "../api.js";
import { colorFor } from "../colors.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const W = 360;
const H = 240;
const WALL_LAYER = 18; // pixel height of one wall ribbon layer

interface Geometry {
  label: string;
  lon: number[];
  lat: number[];
  t: number[];
  features: Record<FeatureName, number[]>;
  anchor?: number; // absolute index, for sample windows
  start?: number;
}

function project(lon: number[], lat: number[]): [number, number][] {
  let minLon = Math.min(...lon), maxLon = Math.max(...lon);
  let minLat = Math.min(...lat), maxLat = Math.max(...lat);
  if (maxLon - minLon < 1e-9) { minLon -= 1e-3; maxLon += 1e-3; }
  if (maxLat - minLat < 1e-9) { minLat -= 1e-3; maxLat += 1e-3; }
  const scale = Math.min((W - 40) / (maxLon - minLon), (H - 60) / (maxLat - minLat));
  const cx = (minLon + maxLon) / 2, cy = (minLat + maxLat) / 2;
  return lon.map((x, i) => [
    W / 2 + (x - cx) * scale,
    H / 2 - (lat[i] - cy) * scale,
  ]);
}

/** Side-by-side trajectory views: a 2D path heatmap of one feature with
 * direction arrows, or the space-time wall with all five feature layers
 * stacked top-to-bottom (speed, acceleration, angle, distance, bearing).
 * The wall uses a fixed orthographic oblique projection, which doubles as
 * the documented fallback when no 3D acceleration exists.
 *
 * When a statistical variable is selected the panel switches to the
 * server-provided sample windows and colors both sides against the shared
 * min/max the service ships with the response. */
export class MapsPanel {
  constructor(private root: HTMLElement) {}

  renderEmpty(message: string): void {
    this.root.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = "Trajectory views";
    this.root.appendChild(title);
    const p = document.createElement("p");
    p.className = "hint";
    p.textContent = message;
    this.root.appendChild(p);
  }

  renderTrajectories(docs: TrajectoryDoc[], view: "2D" | "3D",
                     feature: FeatureName, onToggle: () => void): void {
    const geoms = docs.map((d) => ({
      label: d.trajectory_id, lon: d.lon, lat: d.lat, t: d.t, features: d.features,
    }));
    const ranges = this.ownRanges(geoms);
    this.renderGeometries(geoms, view, feature, ranges, onToggle, "full trajectories");
  }

  renderSamples(windows: SampleWindowDoc[], sharedRange: Record<FeatureName, [number, number]>,
                view: "2D" | "3D", feature: FeatureName, onToggle: () => void): void {
    const geoms = windows.map((w) => ({
      label: `${w.trajectory_id} [${w.start}..${w.end})`
        + (w.is_signature_segment ? " signature segment" : ` anchor ${w.anchor}`),
      lon: w.lon, lat: w.lat, t: w.t, features: w.features,
      anchor: w.anchor, start: w.start,
    }));
    this.renderGeometries(geoms, view, feature, sharedRange, onToggle,
                          `sample windows for ${windows[0]?.variable ?? ""} (shared color scale)`);
  }

  private ownRanges(geoms: Geometry[]): Record<FeatureName, [number, number]> {
    const out = {} as Record<FeatureName, [number, number]>;
    for (const name of FEATURE_LAYERS) {
      const values = geoms.flatMap((g) => g.features[name]);
      out[name] = values.length
        ? [Math.min(...values), Math.max(...values)]
        : [0, 1];
    }
    return out;
  }

  private renderGeometries(geoms: Geometry[], view: "2D" | "3D", feature: FeatureName,
                           ranges: Record<FeatureName, [number, number]>,
                           onToggle: () => void, caption: string): void {
    this.root.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = "Trajectory views";
    this.root.appendChild(title);

    const toggle = document.createElement("button");
    toggle.className = "view-toggle";
    toggle.textContent = view === "2D" ? "switch to 3D wall" : "switch to 2D map";
    toggle.addEventListener("click", onToggle);
    this.root.appendChild(toggle);

    const note = document.createElement("p");
    note.className = "hint";
    note.textContent = `${caption} | coloring: ${feature} (yellow low, red high)`;
    this.root.appendChild(note);

    const wrap = document.createElement("div");
    wrap.className = "map-pair";
    geoms.forEach((geom, i) => {
      const box = document.createElement("div");
      box.className = "map-box";
      const label = document.createElement("h3");
      label.textContent = `Trajectory ${i + 1}: ${geom.label}`;
      box.appendChild(label);
      box.appendChild(view === "2D"
        ? this.map2d(geom, feature, ranges[feature])
        : this.wall3d(geom, ranges));
      wrap.appendChild(box);
    });
    this.root.appendChild(wrap);
  }

  private map2d(geom: Geometry, feature: FeatureName,
                range: [number, number]): SVGSVGElement {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
    svg.setAttribute("class", "map2d");
    const pts = project(geom.lon, geom.lat);
    const values = geom.features[feature];
    for (let i = 1; i < pts.length; i++) {
      const [x1, y1] = pts[i - 1];
      const [x2, y2] = pts[i];
      const seg = document.createElementNS(SVG_NS, "line");
      seg.setAttribute("x1", x1.toFixed(1));
      seg.setAttribute("y1", y1.toFixed(1));
      seg.setAttribute("x2", x2.toFixed(1));
      seg.setAttribute("y2", y2.toFixed(1));
      seg.setAttribute("stroke", colorFor(values[i], range[0], range[1]));
      seg.setAttribute("stroke-width", "5");
      seg.setAttribute("class", "path-seg");
      const tip = document.createElementNS(SVG_NS, "title");
      tip.textContent = `${feature}[${i}] = ${values[i].toFixed(4)}`;
      seg.appendChild(tip);
      svg.appendChild(seg);
      if (i % 2 === 0) svg.appendChild(this.arrow(x1, y1, x2, y2));
    }
    // point markers, highlighting the anchor when this is a sample window
    pts.forEach(([x, y], i) => {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", x.toFixed(1));
      dot.setAttribute("cy", y.toFixed(1));
      const isAnchor = geom.anchor !== undefined && geom.start !== undefined
        && geom.start + i === geom.anchor;
      dot.setAttribute("r", isAnchor ? "6" : "2.5");
      dot.setAttribute("class", isAnchor ? "map-point anchor" : "map-point");
      svg.appendChild(dot);
    });
    return svg;
  }

  private arrow(x1: number, y1: number, x2: number, y2: number): SVGPolygonElement {
    const angle = Math.atan2(y2 - y1, x2 - x1);
    const mx = (x1 + x2) / 2, my = (y1 + y2) / 2;
    const s = 5;
    const p1 = `${mx + s * Math.cos(angle)},${my + s * Math.sin(angle)}`;
    const p2 = `${mx + s * Math.cos(angle + 2.5)},${my + s * Math.sin(angle + 2.5)}`;
    const p3 = `${mx + s * Math.cos(angle - 2.5)},${my + s * Math.sin(angle - 2.5)}`;
    const head = document.createElementNS(SVG_NS, "polygon");
    head.setAttribute("points", `${p1} ${p2} ${p3}`);
    head.setAttribute("class", "arrow");
    return head;
  }

  /** The space-time wall: the path drawn obliquely with five stacked ribbon
   * layers above it. Hovering a wall cell reveals all five feature values at
   * that point in space and time. */
  private wall3d(geom: Geometry,
                 ranges: Record<FeatureName, [number, number]>): SVGSVGElement {
    const svg = document.createElementNS(SVG_NS, "svg");
    const wallTop = FEATURE_LAYERS.length * WALL_LAYER + 12;
    svg.setAttribute("viewBox", `0 0 ${W} ${H + wallTop}`);
    svg.setAttribute("class", "wall3d");
    const pts = project(geom.lon, geom.lat).map(([x, y]) =>
      [x * 0.92 + 14, y * 0.7 + wallTop + H * 0.25] as [number, number]);

    // base path on the "ground"
    for (let i = 1; i < pts.length; i++) {
      const seg = document.createElementNS(SVG_NS, "line");
      seg.setAttribute("x1", pts[i - 1][0].toFixed(1));
      seg.setAttribute("y1", pts[i - 1][1].toFixed(1));
      seg.setAttribute("x2", pts[i][0].toFixed(1));
      seg.setAttribute("y2", pts[i][1].toFixed(1));
      seg.setAttribute("class", "wall-base");
      svg.appendChild(seg);
    }

    // ribbon layers, top-to-bottom: speed, acceleration, angle, distance, bearing
    FEATURE_LAYERS.forEach((name, layer) => {
      const values = geom.features[name];
      const [lo, hi] = ranges[name];
      const offsetBottom = (FEATURE_LAYERS.length - 1 - layer) * WALL_LAYER + 8;
      const offsetTop = offsetBottom + WALL_LAYER - 2;
      for (let i = 1; i < pts.length; i++) {
        const [x1, y1] = pts[i - 1];
        const [x2, y2] = pts[i];
        const quad = document.createElementNS(SVG_NS, "polygon");
        quad.setAttribute("points",
          `${x1},${y1 - offsetBottom} ${x2},${y2 - offsetBottom} `
          + `${x2},${y2 - offsetTop} ${x1},${y1 - offsetTop}`);
        quad.setAttribute("fill", colorFor(values[i], lo, hi));
        quad.setAttribute("class", `wall-cell layer-${name}`);
        quad.dataset.index = String(i);
        const tip = document.createElementNS(SVG_NS, "title");
        tip.textContent = FEATURE_LAYERS
          .map((f) => `${f}: ${geom.features[f][i].toFixed(4)}`)
          .join("\n");
        quad.appendChild(tip);
        svg.appendChild(quad);
      }
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", "2");
      label.setAttribute("y", String(pts[0][1] - offsetBottom - 4));
      label.setAttribute("class", "wall-label");
      label.textContent = name;
      svg.appendChild(label);
    });
    return svg;
  }
}
