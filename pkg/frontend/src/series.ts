// Cell indexing and the per-view series math shared by charts and landmarks.

import type { Cell } from "./types.js";

export class CellIndex {
  private readonly map = new Map<string, number>();
  readonly years: number[];

  constructor(cells: Cell[]) {
    const years = new Set<number>();
    for (const cell of cells) {
      this.map.set(`${cell.region}|${cell.year}|${cell.variable}`, cell.value);
      years.add(cell.year);
    }
    this.years = [...years].sort((a, b) => a - b);
  }

  get(region: string, year: number, variable: string): number {
    return this.map.get(`${region}|${year}|${variable}`) ?? 0;
  }

  groupTotal(region: string, year: number, variables: string[]): number {
    let total = 0;
    for (const variable of variables) total += this.get(region, year, variable);
    return total;
  }
}

// One (region, group, mode) series: the main chart and the landmark
// sparklines both come from here, always from already-fetched responses.
export function viewSeries(
  mode: string,
  result: CellIndex,
  baseline: CellIndex,
  region: string,
  variables: string[],
  regionIds: string[],
): number[] {
  return result.years.map((year) => {
    const value = result.groupTotal(region, year, variables);
    if (mode === "delta") {
      return value - baseline.groupTotal(region, year, variables);
    }
    if (mode === "share") {
      let global = 0;
      for (const r of regionIds) global += result.groupTotal(r, year, variables);
      return global === 0 ? 0 : (100 * value) / global;
    }
    return value;
  });
}

export function formatMT(value: number): string {
  const magnitude = Math.abs(value);
  if (magnitude >= 1000) return `${value.toFixed(0)} MT`;
  if (magnitude >= 10) return `${value.toFixed(1)} MT`;
  return `${value.toFixed(2)} MT`;
}
