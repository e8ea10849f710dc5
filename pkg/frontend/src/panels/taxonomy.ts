import { CHILDREN, NodeName, comboSlug, isValidPair } from "../taxonomy.js";

/** The two-level taxonomy tree. Picking two legal nodes commits a
 * combination; after the first pick every node that cannot legally join it
 * is disabled, so invalid combinations are unreachable. */
export class TaxonomyPanel {
  private picked: NodeName[] = [];
  private committed: string | null = null;

  constructor(private root: HTMLElement,
              private onCombination: (slug: string) => void) {
    this.render();
  }

  /** Reflect an externally chosen combination (heatmap row click, URL). */
  setCombination(slug: string | null): void {
    this.committed = slug;
    this.picked = [];
    this.render();
  }

  private pick(node: NodeName): void {
    if (this.picked.includes(node)) {
      this.picked = this.picked.filter((n) => n !== node);
    } else if (this.picked.length === 0) {
      this.picked = [node];
    } else if (this.picked.length === 1 && isValidPair(this.picked[0], node)) {
      const slug = comboSlug(this.picked[0], node);
      this.picked = [];
      this.committed = slug;
      this.onCombination(slug);
    }
    this.render();
  }

  private nodeButton(node: NodeName): HTMLButtonElement {
    const button = document.createElement("button");
    button.className = "tax-node";
    button.dataset.node = node;
    button.textContent = node;
    const first = this.picked[0];
    const disabled = first !== undefined && first !== node && !isValidPair(first, node);
    button.disabled = disabled;
    if (this.picked.includes(node)) button.classList.add("picked");
    if (this.committed?.split("-").includes(node)) button.classList.add("committed");
    button.addEventListener("click", () => this.pick(node));
    return button;
  }

  private render(): void {
    this.root.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = "Taxonomy";
    this.root.appendChild(title);
    for (const family of ["kinematic", "geometric"] as NodeName[]) {
      const row = document.createElement("div");
      row.className = "tax-family";
      row.appendChild(this.nodeButton(family));
      const kids = document.createElement("div");
      kids.className = "tax-children";
      for (const child of CHILDREN[family]) kids.appendChild(this.nodeButton(child));
      row.appendChild(kids);
      this.root.appendChild(row);
    }
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = this.committed
      ? `combination: ${this.committed}`
      : this.picked.length === 1
        ? `picked ${this.picked[0]}; choose a legal partner`
        : "pick two parameters (7 legal combinations)";
    this.root.appendChild(hint);
  }
}
