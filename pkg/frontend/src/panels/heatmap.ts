import { HeatmapDoc } from "../api.js";
import { colorFor } from "../colors.js";

/** 7x4 frequency grid: one row per combination, one column per zone. The
 * selected combination's row is highlighted and every cell doubles as an
 * alternate combination entry point. */
export class HeatmapPanel {
  constructor(private root: HTMLElement,
              private onCombination: (slug: string) => void) {}

  render(doc: HeatmapDoc | null, selected: string | null): void {
    this.root.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = "Zone frequencies";
    this.root.appendChild(title);
    if (!doc) {
      const p = document.createElement("p");
      p.className = "hint";
      p.textContent = "select a dataset";
      this.root.appendChild(p);
      return;
    }
    const max = Math.max(...doc.counts.flat(), 1);
    const table = document.createElement("table");
    table.className = "heatmap";
    const head = table.createTHead().insertRow();
    head.insertCell().textContent = "combination";
    for (const zone of doc.zones) head.insertCell().textContent = `z${zone}`;
    const body = table.createTBody();
    doc.combinations.forEach((slug, i) => {
      const row = body.insertRow();
      row.dataset.combination = slug;
      if (slug === selected) row.classList.add("selected");
      const label = row.insertCell();
      label.textContent = slug;
      label.className = "combo-label";
      doc.counts[i].forEach((count, zone) => {
        const cell = row.insertCell();
        cell.textContent = String(count);
        cell.className = "heat-cell";
        cell.dataset.zone = String(zone);
        cell.style.backgroundColor = colorFor(count, 0, max);
        cell.addEventListener("click", () => this.onCombination(slug));
      });
      label.addEventListener("click", () => this.onCombination(slug));
    });
    this.root.appendChild(table);
  }
}
