// Cell indexing, per-view series math, sparkline geometry.

import { describe, expect, it } from "vitest";

import { CellIndex, formatMT, viewSeries } from "../src/series.js";
import { polylinePoints, sparklineSvg } from "../src/sparkline.js";
import type { Cell } from "../src/types.js";

const CELLS: Cell[] = [];
for (const region of ["north", "south"]) {
  for (const year of [2020, 2021, 2022]) {
    for (const [variable, base] of [
      ["a", 10],
      ["b", 5],
    ] as const) {
      CELLS.push({ region, year, variable, value: base + (year - 2020) });
    }
  }
}

describe("CellIndex", () => {
  it("indexes cells and sorts years", () => {
    const index = new CellIndex(CELLS);
    expect(index.years).toEqual([2020, 2021, 2022]);
    expect(index.get("north", 2021, "a")).toBe(11);
    expect(index.groupTotal("north", 2021, ["a", "b"])).toBe(17);
  });

  it("missing cells read as zero", () => {
    const index = new CellIndex(CELLS);
    expect(index.get("north", 2021, "ghost")).toBe(0);
  });
});

describe("viewSeries modes", () => {
  const index = new CellIndex(CELLS);

  it("timeseries mode returns the group totals", () => {
    expect(viewSeries("timeseries", index, index, "north", ["a", "b"], ["north", "south"]))
      .toEqual([15, 17, 19]);
  });

  it("delta against an identical baseline is zero", () => {
    expect(viewSeries("delta", index, index, "north", ["a", "b"], ["north", "south"]))
      .toEqual([0, 0, 0]);
  });

  it("share mode splits 50/50 for symmetric regions", () => {
    expect(viewSeries("share", index, index, "north", ["a", "b"], ["north", "south"]))
      .toEqual([50, 50, 50]);
  });
});

describe("sparkline geometry", () => {
  it("emits one point per value inside the box", () => {
    const points = polylinePoints([1, 5, 3], 120, 36);
    const pairs = points.split(" ").map((p) => p.split(",").map(Number));
    expect(pairs.length).toBe(3);
    for (const [x, y] of pairs) {
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(120);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(36);
    }
  });

  it("flat series renders without dividing by zero", () => {
    expect(polylinePoints([2, 2, 2], 100, 30)).toBeTruthy();
    expect(sparklineSvg([2, 2, 2])).toContain("<svg");
  });
});

describe("formatMT", () => {
  it("scales decimals with magnitude", () => {
    expect(formatMT(1234.5)).toBe("1235 MT");
    expect(formatMT(42.42)).toBe("42.4 MT");
    expect(formatMT(1.234)).toBe("1.23 MT");
  });
});
