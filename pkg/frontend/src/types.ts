// Wire types for the simulation service (see docs/formats.md in the repo root).

export interface RegionInfo {
  id: string;
  display_name: string;
}

export interface AttributeInfo {
  id: string;
  kind: "consumption-sector" | "eol-fate" | "production" | "trade";
  unit: string;
  group: string | null;
}

export interface Vocabulary {
  regions: RegionInfo[];
  attributes: AttributeInfo[];
  lifetimes: Record<string, number>;
}

export interface Cell {
  year: number;
  region: string;
  variable: string;
  value: number;
}

export interface BaselineResponse {
  baseline_id: string;
  years: [number, number];
  cells: Cell[];
}

export interface Violation {
  code: string;
  message: string;
  line: number;
  column: number;
}

export interface CheckResponse {
  violations: Violation[];
}

export interface HeadlineMetrics {
  cumulative_global_mismanaged: number;
  end_year_fates: Record<string, Record<string, number>>;
}

export interface SimulateResponse {
  engine_version: string;
  baseline_id: string;
  years: [number, number];
  run_years: [number, number];
  cells: Cell[];
  headline: HeadlineMetrics;
}

export interface LeverInputSpec {
  default: number;
  min: number;
  max: number;
  step?: number;
  label?: string;
}

export interface LeverSpec {
  id: string;
  display_name: string;
  description?: string;
  inputs: Record<string, LeverInputSpec>;
  inline_script: string;
}

export interface ScenarioDoc {
  levers: Array<{
    id: string;
    display_name: string;
    inputs: Record<string, { default: number; min: number; max: number }>;
    inline_script: string;
  }>;
  values: Record<string, Record<string, number>>;
  years: [number, number];
}
