import { ApiClient, CompareDoc, FeatureName, HeatmapDoc, ScoresDoc } from "./api.js";
import { SelectionModel, SelectionState } from "./model.js";
import { baseFeatureForVariable, slugNodes } from "./taxonomy.js";
import { HeatmapPanel } from "./panels/heatmap.js";
import { ImportancePanel } from "./panels/importance.js";
import { MapsPanel } from "./panels/maps.js";
import { ScatterPanel } from "./panels/scatter.js";
import { TaxonomyPanel } from "./panels/taxonomy.js";

/** Wires the panels to the selection model and the service.
 *
 * Data flow per workflow step: dataset -> heatmap; combination -> scores
 * scatter (and heatmap row highlight); two zones -> compare -> importance
 * columns; two trajectories -> side-by-side maps; variable -> sampled
 * windows with the server's shared color range. Stale responses are dropped
 * via per-resource generation counters, and service errors surface inline
 * without touching the selection.
 */
export class App {
  readonly model = new SelectionModel();
  private taxonomy: TaxonomyPanel;
  private heatmapPanel: HeatmapPanel;
  private scatterPanel: ScatterPanel;
  private importancePanel: ImportancePanel;
  private mapsPanel: MapsPanel;

  private heatmapDoc: HeatmapDoc | null = null;
  private scoresDoc: ScoresDoc | null = null;
  private compareDoc: CompareDoc | null = null;
  private generations: Record<string, number> = {};

  constructor(private rootEl: HTMLElement, private api: ApiClient,
              private onUrl: (query: string) => void = () => {}) {
    this.rootEl.innerHTML = `
      <header><h1>trajscope workbench</h1>
        <select id="dataset-select"><option value="">choose dataset</option></select>
        <span id="error-bar" class="error-bar" hidden></span>
      </header>
      <main>
        <section id="taxonomy-panel" class="panel"></section>
        <section id="heatmap-panel" class="panel"></section>
        <section id="scatter-panel" class="panel"></section>
        <section id="importance-panel" class="panel"></section>
        <section id="maps-panel" class="panel wide"></section>
      </main>`;

    this.taxonomy = new TaxonomyPanel(
      this.el("taxonomy-panel"), (slug) => this.model.setCombination(slug));
    this.heatmapPanel = new HeatmapPanel(
      this.el("heatmap-panel"), (slug) => this.model.setCombination(slug));
    this.scatterPanel = new ScatterPanel(
      this.el("scatter-panel"),
      (tid) => this.model.toggleTrajectory(tid),
      (zone) => this.model.toggleZone(zone));
    this.importancePanel = new ImportancePanel(
      this.el("importance-panel"), (variable) => this.model.setVariable(variable));
    this.mapsPanel = new MapsPanel(this.el("maps-panel"));

    this.model.subscribe((state, changed) => void this.react(state, changed));
    this.renderAll(this.model.current);
  }

  private el(id: string): HTMLElement {
    const found = this.rootEl.querySelector(`#${id}`);
    if (!found) throw new Error(`missing panel container #${id}`);
    return found as HTMLElement;
  }

  private setError(message: string | null): void {
    const bar = this.el("error-bar");
    bar.hidden = message === null;
    bar.textContent = message ?? "";
  }

  private fresh(resource: string): number {
    this.generations[resource] = (this.generations[resource] ?? 0) + 1;
    return this.generations[resource];
  }

  private isCurrent(resource: string, generation: number): boolean {
    return this.generations[resource] === generation;
  }

  async start(): Promise<void> {
    const select = this.el("dataset-select") as HTMLSelectElement;
    try {
      const doc = await this.api.datasets();
      for (const entry of doc.datasets) {
        const option = document.createElement("option");
        option.value = entry.id;
        option.textContent = `${entry.name} (${entry.counts.trajectories} trajectories)`;
        select.appendChild(option);
      }
    } catch (exc) {
      this.setError(`failed to list datasets: ${(exc as Error).message}`);
      return;
    }
    select.addEventListener("change", () => {
      this.model.setDataset(select.value || null);
    });
  }

  /** React to one selection change; fetches only what the change invalidated. */
  private async react(state: SelectionState, changed: keyof SelectionState): Promise<void> {
    this.onUrl(this.model.toUrl());
    this.setError(null);
    if (changed === "dataset") {
      this.heatmapDoc = null;
      this.scoresDoc = null;
      this.compareDoc = null;
      this.renderAll(state);
      if (state.dataset) await this.loadHeatmap(state);
      return;
    }
    if (changed === "combination") {
      this.scoresDoc = null;
      this.compareDoc = null;
      this.taxonomy.setCombination(state.combination);
      this.renderAll(state);
      if (state.dataset && state.combination) await this.loadScores(state);
      return;
    }
    if (changed === "zones") {
      this.compareDoc = null;
      this.renderAll(state);
      if (state.zones.length === 2) await this.loadCompare(state);
      return;
    }
    if (changed === "trajectories" || changed === "variable" || changed === "view") {
      this.renderAll(state);
      await this.loadMaps(state);
    }
  }

  private async loadHeatmap(state: SelectionState): Promise<void> {
    const generation = this.fresh("heatmap");
    try {
      const doc = await this.api.heatmap(state.dataset!);
      if (!this.isCurrent("heatmap", generation)) return;
      this.heatmapDoc = doc;
      this.renderAll(this.model.current);
    } catch (exc) {
      this.setError(`heatmap: ${(exc as Error).message}`);
    }
  }

  private async loadScores(state: SelectionState): Promise<void> {
    const generation = this.fresh("scores");
    try {
      const doc = await this.api.scores(state.dataset!, state.combination!);
      if (!this.isCurrent("scores", generation)) return;
      this.scoresDoc = doc;
      this.renderAll(this.model.current);
    } catch (exc) {
      this.setError(`scores: ${(exc as Error).message}`);
    }
  }

  private async loadCompare(state: SelectionState): Promise<void> {
    const generation = this.fresh("compare");
    try {
      const doc = await this.api.compare(
        state.dataset!, state.combination!, state.zones[0], state.zones[1]);
      if (!this.isCurrent("compare", generation)) return;
      this.compareDoc = doc;
      this.renderAll(this.model.current);
    } catch (exc) {
      this.setError(`compare: ${(exc as Error).message}`);
    }
  }

  private async loadMaps(state: SelectionState): Promise<void> {
    if (!state.dataset || state.trajectories.length === 0) return;
    const generation = this.fresh("maps");
    const feature: FeatureName = state.variable
      ? baseFeatureForVariable(state.variable) as FeatureName
      : "speed";
    try {
      if (state.variable) {
        const doc = await this.api.sample(state.dataset, state.trajectories, state.variable);
        if (!this.isCurrent("maps", generation)) return;
        this.mapsPanel.renderSamples(doc.windows, doc.shared_range, state.view, feature,
                                     () => this.model.setView(state.view === "2D" ? "3D" : "2D"));
      } else {
        const docs = await Promise.all(
          state.trajectories.map((tid) => this.api.trajectory(state.dataset!, tid)));
        if (!this.isCurrent("maps", generation)) return;
        this.mapsPanel.renderTrajectories(docs, state.view, feature,
                                          () => this.model.setView(state.view === "2D" ? "3D" : "2D"));
      }
    } catch (exc) {
      this.setError(`maps: ${(exc as Error).message}`);
    }
  }

  private renderAll(state: SelectionState): void {
    this.heatmapPanel.render(this.heatmapDoc, state.combination);
    this.scatterPanel.render(this.scoresDoc, state.trajectories, state.zones);
    const [a, b] = state.combination ? slugNodes(state.combination) : ["x", "y"];
    const xNode = this.scoresDoc?.x_node ?? a;
    const yNode = this.scoresDoc?.y_node ?? b;
    this.importancePanel.render(this.compareDoc, xNode, yNode, state.variable);
    if (state.trajectories.length === 0) {
      this.mapsPanel.renderEmpty("select one or two trajectories in the scatter");
    }
  }
}
