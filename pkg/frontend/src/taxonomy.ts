/** Client-side mirror of the fixed movement taxonomy: which node pairs are
 * legal and how a pair serializes. Used only to enable/disable tree picks;
 * the server remains the authority on every computed result. */

export type NodeName =
  | "geometric" | "kinematic"
  | "speed" | "acceleration" | "curvature" | "indentation";

export const NODES: NodeName[] = [
  "geometric", "kinematic", "speed", "acceleration", "curvature", "indentation",
];

export const PARENT: Record<NodeName, NodeName | null> = {
  geometric: null,
  kinematic: null,
  speed: "kinematic",
  acceleration: "kinematic",
  curvature: "geometric",
  indentation: "geometric",
};

export const CHILDREN: Record<string, NodeName[]> = {
  geometric: ["curvature", "indentation"],
  kinematic: ["speed", "acceleration"],
};

/** Legal iff the nodes sit on the same level: the two roots together, or any
 * two distinct leaves. Everything else (self, parent-child, root with the
 * other root's child) is rejected. */
export function isValidPair(a: NodeName, b: NodeName): boolean {
  if (a === b) return false;
  if (PARENT[a] === b || PARENT[b] === a) return false;
  return (PARENT[a] === null) === (PARENT[b] === null);
}

export function comboSlug(a: NodeName, b: NodeName): string {
  return [a, b].sort().join("-");
}

export function slugNodes(slug: string): [NodeName, NodeName] {
  const [a, b] = slug.split("-") as [NodeName, NodeName];
  return [a, b];
}

/** Which variable prefix belongs to a node's subspace; used to label the
 * importance columns and pick map features. */
export function nodeForVariable(variable: string): NodeName {
  if (variable.startsWith("speed_")) return "speed";
  if (variable.startsWith("acceleration_")) return "acceleration";
  if (variable.startsWith("angles_")) return "indentation";
  return "curvature";
}

/** The base feature series a statistical variable is computed from. */
export function baseFeatureForVariable(variable: string):
    "speed" | "acceleration" | "angle" | "distance" {
  if (variable.startsWith("speed_")) return "speed";
  if (variable.startsWith("acceleration_")) return "acceleration";
  if (variable.startsWith("angles_")) return "angle";
  return "distance"; // distance-geometry signatures color by segment distance
}
