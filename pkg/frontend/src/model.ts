/** The analyst's selection state and its propagation rules: changing an
 * upstream choice clears everything downstream of it, so stale panels never
 * survive a re-selection. Serializes into the URL for shareable sessions. */

export type ViewMode = "2D" | "3D";

export interface SelectionState {
  dataset: string | null;
  combination: string | null;
  trajectories: string[]; // at most 2
  zones: number[];        // at most 2
  variable: string | null;
  view: ViewMode;
}

export type Listener = (state: SelectionState, changed: keyof SelectionState) => void;

export class SelectionModel {
  private state: SelectionState = {
    dataset: null,
    combination: null,
    trajectories: [],
    zones: [],
    variable: null,
    view: "2D",
  };
  private listeners: Listener[] = [];

  get current(): SelectionState {
    return {
      ...this.state,
      trajectories: [...this.state.trajectories],
      zones: [...this.state.zones],
    };
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(changed: keyof SelectionState): void {
    const snapshot = this.current;
    for (const listener of this.listeners) listener(snapshot, changed);
  }

  setDataset(id: string | null): void {
    if (this.state.dataset === id) return;
    this.state.dataset = id;
    this.state.combination = null;
    this.state.trajectories = [];
    this.state.zones = [];
    this.state.variable = null;
    this.emit("dataset");
  }

  setCombination(slug: string | null): void {
    if (this.state.combination === slug) return;
    this.state.combination = slug;
    this.state.trajectories = [];
    this.state.zones = [];
    this.state.variable = null;
    this.emit("combination");
  }

  /** Toggle a trajectory into the comparison pair (keeps the newest two). */
  toggleTrajectory(tid: string): void {
    const list = this.state.trajectories;
    const at = list.indexOf(tid);
    if (at >= 0) list.splice(at, 1);
    else {
      list.push(tid);
      if (list.length > 2) list.shift();
    }
    this.state.variable = null;
    this.emit("trajectories");
  }

  toggleZone(zone: number): void {
    const list = this.state.zones;
    const at = list.indexOf(zone);
    if (at >= 0) list.splice(at, 1);
    else {
      list.push(zone);
      if (list.length > 2) list.shift();
    }
    this.state.variable = null;
    this.emit("zones");
  }

  setVariable(variable: string | null): void {
    if (this.state.variable === variable) return;
    this.state.variable = variable;
    this.emit("variable");
  }

  setView(view: ViewMode): void {
    if (this.state.view === view) return;
    this.state.view = view;
    this.emit("view");
  }

  toUrl(): string {
    const params = new URLSearchParams();
    const s = this.state;
    if (s.dataset) params.set("dataset", s.dataset);
    if (s.combination) params.set("combo", s.combination);
    if (s.trajectories.length) params.set("tids", s.trajectories.join(","));
    if (s.zones.length) params.set("zones", s.zones.join(","));
    if (s.variable) params.set("variable", s.variable);
    params.set("view", s.view);
    return params.toString();
  }

  restore(query: string): void {
    const params = new URLSearchParams(query);
    this.state.dataset = params.get("dataset");
    this.state.combination = params.get("combo");
    this.state.trajectories = (params.get("tids") ?? "").split(",").filter(Boolean).slice(0, 2);
    this.state.zones = (params.get("zones") ?? "").split(",").filter(Boolean)
      .map(Number).filter((z) => z >= 0 && z <= 3).slice(0, 2);
    this.state.variable = params.get("variable");
    this.state.view = params.get("view") === "3D" ? "3D" : "2D";
    this.emit("dataset");
  }
}
