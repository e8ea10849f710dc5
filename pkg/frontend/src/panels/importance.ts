import { CompareDoc, ImportanceEntry } from "../api.js";

/** Two descending importance columns, one per combination axis, with the
 * model's F1 and accuracy on top. Clicking a bar selects that statistical
 * variable for the map views. */
export class ImportancePanel {
  constructor(private root: HTMLElement,
              private onVariable: (variable: string) => void) {}

  private column(label: string, entries: ImportanceEntry[],
                 selected: string | null): HTMLElement {
    const max = Math.max(...entries.map((e) => e.importance), 1e-12);
    const box = document.createElement("div");
    box.className = "imp-column";
    const head = document.createElement("h3");
    head.textContent = label;
    box.appendChild(head);
    for (const entry of entries.slice(0, 12)) {
      const row = document.createElement("button");
      row.className = "imp-bar" + (entry.variable === selected ? " selected" : "");
      row.dataset.variable = entry.variable;
      row.title = `${entry.variable}: ${entry.importance.toFixed(5)}`;
      const fill = document.createElement("span");
      fill.className = "imp-fill";
      fill.style.width = `${(100 * entry.importance / max).toFixed(1)}%`;
      const text = document.createElement("span");
      text.className = "imp-text";
      text.textContent = `${entry.variable} ${entry.importance.toFixed(4)}`;
      row.appendChild(fill);
      row.appendChild(text);
      row.addEventListener("click", () => this.onVariable(entry.variable));
      box.appendChild(row);
    }
    return box;
  }

  render(doc: CompareDoc | null, xNode: string, yNode: string,
         selectedVariable: string | null): void {
    this.root.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = "Feature importance";
    this.root.appendChild(title);
    if (!doc) {
      const p = document.createElement("p");
      p.className = "hint";
      p.textContent = "select two zones to compare";
      this.root.appendChild(p);
      return;
    }
    const metrics = document.createElement("p");
    metrics.className = "metrics";
    metrics.textContent = `zones ${doc.zone_a} vs ${doc.zone_b} | `
      + `F1 ${(100 * doc.metrics.f1).toFixed(1)}% | `
      + `accuracy ${(100 * doc.metrics.accuracy).toFixed(1)}%`;
    this.root.appendChild(metrics);
    const columns = document.createElement("div");
    columns.className = "imp-columns";
    columns.appendChild(this.column(`${xNode} (x)`, doc.column_x, selectedVariable));
    columns.appendChild(this.column(`${yNode} (y)`, doc.column_y, selectedVariable));
    this.root.appendChild(columns);
  }
}
