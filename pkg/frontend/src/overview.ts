// Overview tab: the simplified starting area. Lever sliders, headline
// numbers, and a de-emphasized doorway into the details tab that unlocks
// after the first lever interaction.

import type { AppState } from "./state.js";
import { CellIndex, formatMT } from "./series.js";
import { bindTooltips } from "./tooltips.js";
import type { Vocabulary } from "./types.js";

export interface OverviewCallbacks {
  onLeverInput(leverId: string, param: string, value: number): void;
  onEnterDetails(): void;
}

const FATE_LABELS: Record<string, string> = {
  eolRecyclingMT: "Recycling",
  eolIncinerationMT: "Incineration",
  eolLandfillMT: "Landfill",
  eolMismanagedMT: "Mismanaged",
};

function headlineBlock(state: AppState, vocabulary: Vocabulary, baseline: CellIndex): string {
  const result = state.lastResult;
  const cumulative = result
    ? result.headline.cumulative_global_mismanaged
    : baselineCumulative(vocabulary, baseline, state.years);
  const endYear = state.years[1];
  const fates = result
    ? result.headline.end_year_fates
    : Object.fromEntries(
        vocabulary.regions.map((r) => [
          r.id,
          Object.fromEntries(
            Object.keys(FATE_LABELS).map((f) => [f, baseline.get(r.id, endYear, f)]),
          ),
        ]),
      );
  const rows = vocabulary.regions
    .map((region) => {
      const cells = Object.keys(FATE_LABELS)
        .map((fate) => `<td>${formatMT(fates[region.id]?.[fate] ?? 0)}</td>`)
        .join("");
      return `<tr><th>${region.display_name}</th>${cells}</tr>`;
    })
    .join("");
  return `
    <div class="headline">
      <div class="metric">
        <span class="metric-value" id="cumulative-mismanaged">${formatMT(cumulative)}</span>
        <span class="metric-label">cumulative global
          <span data-rumor="mismanaged waste">mismanaged waste</span>,
          ${state.years[0]}&ndash;${state.years[1]}</span>
      </div>
      <table class="fates">
        <thead><tr><th><span data-rumor="EOL fates">${endYear} fates</span></th>
          ${Object.values(FATE_LABELS).map((l) => `<th>${l}</th>`).join("")}</tr></thead>
        <tbody>${rows}</tbody>
      </table>
    </div>`;
}

function baselineCumulative(
  vocabulary: Vocabulary,
  baseline: CellIndex,
  years: [number, number],
): number {
  let total = 0;
  for (let year = years[0]; year <= years[1]; year += 1) {
    for (const region of vocabulary.regions) {
      total += baseline.get(region.id, year, "eolMismanagedMT");
    }
  }
  return total;
}

function leverCard(state: AppState, leverId: string): string {
  const lever = state.levers.find((l) => l.id === leverId)!;
  const sliders = Object.entries(lever.inputs)
    .map(([param, spec]) => {
      const value = state.values[lever.id][param];
      const step = spec.step ?? (spec.max - spec.min) / 100;
      return `
        <label class="slider-row">
          <span class="slider-label">${spec.label ?? param}</span>
          <input type="range" data-lever="${lever.id}" data-param="${param}"
                 min="${spec.min}" max="${spec.max}" step="${step}" value="${value}">
          <output>${value}</output>
        </label>`;
    })
    .join("");
  return `
    <article class="lever-card">
      <h3><span data-rumor="lever">${lever.display_name}</span></h3>
      <p class="lever-desc">${lever.description ?? ""}</p>
      ${sliders}
    </article>`;
}

export function renderOverview(
  container: HTMLElement,
  state: AppState,
  vocabulary: Vocabulary,
  baseline: CellIndex,
  callbacks: OverviewCallbacks,
) {
  const unlocked = state.detailsUnlocked;
  container.innerHTML = `
    ${headlineBlock(state, vocabulary, baseline)}
    <div class="levers">${state.levers.map((l) => leverCard(state, l.id)).join("")}</div>
    <div class="details-entry ${unlocked ? "" : "gated"}">
      <button id="goto-details" ${unlocked ? "" : "disabled"}>
        Explore the details</button>
      <span class="gate-hint" ${unlocked ? "hidden" : ""}>
        move a lever to open the full picture</span>
    </div>`;

  for (const input of Array.from(
    container.querySelectorAll<HTMLInputElement>("input[type=range]"),
  )) {
    input.addEventListener("input", () => {
      const output = input.parentElement?.querySelector("output");
      if (output) output.textContent = input.value;
      callbacks.onLeverInput(
        input.dataset.lever ?? "",
        input.dataset.param ?? "",
        Number(input.value),
      );
    });
  }
  container
    .querySelector("#goto-details")
    ?.addEventListener("click", () => callbacks.onEnterDetails());
  bindTooltips(container);
}
