/** Typed client for the analytics service JSON API. All analytics happen
 * server side; the workbench only renders what these endpoints return. */

export type FeatureName = "speed" | "acceleration" | "angle" | "distance" | "bearing";

export const FEATURE_LAYERS: FeatureName[] = [
  "speed", "acceleration", "angle", "distance", "bearing",
];

export interface DatasetEntry {
  id: string;
  name: string;
  counts: { trajectories: number; points: number };
}

export interface HeatmapDoc {
  combinations: string[];
  zones: number[];
  counts: number[][];
}

export interface ZonedScoreDoc {
  trajectory_id: string;
  combination: string;
  x: number;
  y: number;
  zone: number;
}

export interface ScoresDoc {
  combination: string;
  x_node: string;
  y_node: string;
  scores: ZonedScoreDoc[];
}

export interface MetricsDoc {
  f1: number;
  accuracy: number;
  precision: Record<string, number>;
  recall: Record<string, number>;
  test_size: number;
}

export interface ImportanceEntry {
  variable: string;
  importance: number;
}

export interface CompareDoc {
  combination: string;
  zone_a: number;
  zone_b: number;
  metrics: MetricsDoc;
  column_x: ImportanceEntry[];
  column_y: ImportanceEntry[];
  trained_features: string[];
}

export interface TrajectoryDoc {
  trajectory_id: string;
  lon: number[];
  lat: number[];
  t: number[];
  features: Record<FeatureName, number[]>;
}

export interface SampleWindowDoc {
  trajectory_id: string;
  variable: string;
  anchor: number;
  start: number;
  end: number;
  lon: number[];
  lat: number[];
  t: number[];
  features: Record<FeatureName, number[]>;
  statistic_value: number;
  is_signature_segment: boolean;
}

export interface SampleDoc {
  variable: string;
  windows: SampleWindowDoc[];
  shared_range: Record<FeatureName, [number, number]>;
}

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  const body = await response.json();
  if (!response.ok) {
    const err = body?.error ?? {};
    throw new ApiError(response.status, err.code ?? "unknown", err.message ?? "request failed");
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  datasets(): Promise<{ datasets: DatasetEntry[] }> {
    return getJson(`${this.base}/api/datasets`);
  }

  heatmap(datasetId: string): Promise<HeatmapDoc> {
    return getJson(`${this.base}/api/datasets/${datasetId}/heatmap`);
  }

  scores(datasetId: string, combo: string): Promise<ScoresDoc> {
    return getJson(`${this.base}/api/datasets/${datasetId}/scores?combo=${encodeURIComponent(combo)}`);
  }

  async compare(datasetId: string, combo: string, zoneA: number, zoneB: number): Promise<CompareDoc> {
    const response = await fetch(`${this.base}/api/datasets/${datasetId}/compare`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ combo, zone_a: zoneA, zone_b: zoneB }),
    });
    const body = await response.json();
    if (!response.ok) {
      const err = body?.error ?? {};
      throw new ApiError(response.status, err.code ?? "unknown", err.message ?? "compare failed");
    }
    return body as CompareDoc;
  }

  trajectory(datasetId: string, tid: string): Promise<TrajectoryDoc> {
    return getJson(`${this.base}/api/datasets/${datasetId}/trajectories/${encodeURIComponent(tid)}`);
  }

  sample(datasetId: string, tids: string[], variable: string): Promise<SampleDoc> {
    const params = new URLSearchParams();
    for (const tid of tids) params.append("tid", tid);
    params.append("variable", variable);
    return getJson(`${this.base}/api/datasets/${datasetId}/sample?${params.toString()}`);
  }
}
