// The details tab's navigable space: region x attribute-group x display mode.
//
// One view is focused at a time; landmarks are small previews at the edges of
// the current view advertising the adjacent views, so the whole space stays
// traversable without ever being shown at once.

import type { DetailsFocus } from "./state.js";
import type { Vocabulary } from "./types.js";

export const DISPLAY_MODES = ["timeseries", "delta", "share"] as const;

export interface ViewAxes {
  regions: string[];
  groups: string[];
  modes: string[];
}

export function viewAxes(vocabulary: Vocabulary): ViewAxes {
  const groups: string[] = [];
  for (const attribute of vocabulary.attributes) {
    const group = attribute.group ?? "Other";
    if (!groups.includes(group)) groups.push(group);
  }
  return {
    regions: vocabulary.regions.map((r) => r.id),
    groups,
    modes: [...DISPLAY_MODES],
  };
}

export function viewCount(axes: ViewAxes): number {
  return axes.regions.length * axes.groups.length * axes.modes.length;
}

export function defaultFocus(axes: ViewAxes): DetailsFocus {
  return { region: axes.regions[0], group: axes.groups[0], mode: axes.modes[0] };
}

export function groupAttributes(vocabulary: Vocabulary, group: string): string[] {
  return vocabulary.attributes
    .filter((a) => (a.group ?? "Other") === group)
    .map((a) => a.id);
}

export interface Landmark {
  label: string;
  target: DetailsFocus;
  axis: "region" | "group";
  placement: "before" | "after";
}

function rotate<T>(items: T[], current: T, step: number): T {
  const index = items.indexOf(current);
  return items[(index + step + items.length) % items.length];
}

// Two axes, both directions: every focused view advertises >= 2 (here 4,
// collapsing when an axis has < 3 entries) adjacent views.
export function landmarks(axes: ViewAxes, focus: DetailsFocus): Landmark[] {
  const found: Landmark[] = [];
  const seen = new Set<string>();
  const candidates: Array<[DetailsFocus, "region" | "group", "before" | "after"]> = [
    [{ ...focus, region: rotate(axes.regions, focus.region, -1) }, "region", "before"],
    [{ ...focus, region: rotate(axes.regions, focus.region, +1) }, "region", "after"],
    [{ ...focus, group: rotate(axes.groups, focus.group, -1) }, "group", "before"],
    [{ ...focus, group: rotate(axes.groups, focus.group, +1) }, "group", "after"],
  ];
  for (const [target, axis, placement] of candidates) {
    const key = `${target.region}|${target.group}|${target.mode}`;
    const focusKey = `${focus.region}|${focus.group}|${focus.mode}`;
    if (key === focusKey || seen.has(key)) continue;
    seen.add(key);
    found.push({
      label: axis === "region" ? target.region : target.group,
      target,
      axis,
      placement,
    });
  }
  return found;
}
