import { ScoresDoc } from "../api.js";
import { ZONE_COLORS, ZONE_LABELS } from "../colors.js";
import { BOUNDARY_LINES, ZONE_REGIONS, svgPoints } from "../zones.js";

const SIZE = 320;
const PAD = 28;
const SVG_NS = "http://www.w3.org/2000/svg";

/** The decision-boundary scatter. Region shading comes from the published
 * boundary geometry; every point is colored by the zone the server assigned
 * (class `zone-N`), never recomputed client side. Clicking a point toggles
 * it into the trajectory pair; the zone chips below select the zone pair for
 * comparison. */
export class ScatterPanel {
  constructor(private root: HTMLElement,
              private onTrajectory: (tid: string) => void,
              private onZone: (zone: number) => void) {}

  render(doc: ScoresDoc | null, selectedTids: string[], selectedZones: number[]): void {
    this.root.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = "Decision boundary";
    this.root.appendChild(title);
    if (!doc) {
      const p = document.createElement("p");
      p.className = "hint";
      p.textContent = "select a combination";
      this.root.appendChild(p);
      return;
    }

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `${-PAD} ${-8} ${SIZE + PAD + 8} ${SIZE + PAD + 8}`);
    svg.setAttribute("class", "scatter");

    for (const region of ZONE_REGIONS) {
      const poly = document.createElementNS(SVG_NS, "polygon");
      poly.setAttribute("points", svgPoints(region.points, SIZE));
      poly.setAttribute("class", `region region-${region.zone}`);
      poly.setAttribute("fill", ZONE_COLORS[region.zone]);
      poly.setAttribute("fill-opacity", selectedZones.includes(region.zone) ? "0.30" : "0.08");
      svg.appendChild(poly);
    }
    for (const line of BOUNDARY_LINES) {
      const path = document.createElementNS(SVG_NS, "polyline");
      path.setAttribute("points", svgPoints(line, SIZE));
      path.setAttribute("class", "boundary");
      svg.appendChild(path);
    }

    const axisX = document.createElementNS(SVG_NS, "text");
    axisX.setAttribute("x", String(SIZE / 2));
    axisX.setAttribute("y", String(SIZE + 22));
    axisX.setAttribute("class", "axis-label");
    axisX.textContent = `${doc.x_node} score (x)`;
    svg.appendChild(axisX);
    const axisY = document.createElementNS(SVG_NS, "text");
    axisY.setAttribute("transform", `translate(${-14},${SIZE / 2}) rotate(-90)`);
    axisY.setAttribute("class", "axis-label");
    axisY.textContent = `${doc.y_node} score (y)`;
    svg.appendChild(axisY);

    for (const score of doc.scores) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", (score.x * SIZE).toFixed(1));
      dot.setAttribute("cy", ((1 - score.y) * SIZE).toFixed(1));
      dot.setAttribute("r", selectedTids.includes(score.trajectory_id) ? "7" : "4");
      dot.setAttribute("fill", ZONE_COLORS[score.zone]);
      dot.setAttribute("class", `point zone-${score.zone}`
        + (selectedTids.includes(score.trajectory_id) ? " selected" : ""));
      dot.dataset.tid = score.trajectory_id;
      dot.dataset.zone = String(score.zone);
      const tooltip = document.createElementNS(SVG_NS, "title");
      tooltip.textContent = `${score.trajectory_id}: x=${score.x.toFixed(4)}, `
        + `y=${score.y.toFixed(4)}, zone ${score.zone}`;
      dot.appendChild(tooltip);
      dot.addEventListener("click", () => this.onTrajectory(score.trajectory_id));
      svg.appendChild(dot);
    }
    this.root.appendChild(svg);

    const chips = document.createElement("div");
    chips.className = "zone-chips";
    for (const zone of [0, 1, 2, 3]) {
      const chip = document.createElement("button");
      chip.className = "zone-chip" + (selectedZones.includes(zone) ? " selected" : "");
      chip.dataset.zone = String(zone);
      chip.style.borderColor = ZONE_COLORS[zone];
      chip.textContent = ZONE_LABELS[zone];
      chip.addEventListener("click", () => this.onZone(zone));
      chips.appendChild(chip);
    }
    this.root.appendChild(chips);

    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = selectedTids.length
      ? `comparing: ${selectedTids.join(" vs ")}`
      : "click two points to compare trajectories; pick two zones to compare groups";
    this.root.appendChild(hint);
  }
}
