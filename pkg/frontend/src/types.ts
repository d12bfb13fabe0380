// Wire types for the preview API. The UI never computes scale values or
// weights itself; every displayed number comes from one of these payloads.

export interface AnchorRef {
  index: number;
  value: number;
}

export interface ScaleJudgements {
  levels: number[];
  anchors: { lo: AnchorRef; hi: AnchorRef };
  gaps: number[];
  cap?: number;
  table?: TableEntry[];
}

export interface TableEntry {
  i: number;
  j: number;
  cards: number;
}

export interface FunctionDoc {
  breakpoints: [number, number][];
  cap: number;
  cap_onset: number | null;
  domain: string;
  name: string;
}

export interface ScaleResult {
  unit_value: number;
  unit_count: number;
  values: number[];
}

export interface ScaleResponse {
  scale: ScaleResult;
  function: FunctionDoc;
}

export interface RankingPayload {
  tiers: number[][];
  tier_gaps: number[];
  z: number;
}

export interface WeightsResponse {
  weights: number[];
  criteria: number[];
}

export interface ConsistencyViolation {
  pair: [number, number];
  expected: number;
  actual: number;
  residual: number;
}

export interface ConfigMetadata {
  name: string;
  version: string;
  created: string;
}

export interface StateScaleDoc {
  cutoffs: [number, string, string][];
  hysteresis: number;
}

export interface ConfigDoc {
  schema: string;
  metadata: ConfigMetadata;
  value_functions: FunctionDoc[];
  weights: number[];
  state_scale: StateScaleDoc;
}

export interface AggregateResponse {
  overall: number;
  contributions: number[];
  state: string;
}

export const CRITERIA = ["incid", "trans", "letha", "wards", "icu"] as const;
export type CriterionIndex = 0 | 1 | 2 | 3 | 4;
