// Details tab: one focused (region x group x mode) view at a time, with
// landmark sparklines at the edges advertising the adjacent views. The
// prototype drawer lives in static markup below this view (its textarea must
// survive re-renders), wired up by main.ts.

import { CellIndex, formatMT, viewSeries } from "./series.js";
import { chartSvg, sparklineSvg } from "./sparkline.js";
import type { AppState, DetailsFocus } from "./state.js";
import { bindTooltips } from "./tooltips.js";
import type { Vocabulary } from "./types.js";
import { groupAttributes, landmarks, viewAxes, viewCount } from "./views.js";

export interface DetailsCallbacks {
  onFocusChange(focus: DetailsFocus): void;
}

const MODE_LABELS: Record<string, string> = {
  timeseries: "MT / year",
  delta: "Δ vs baseline",
  share: "% of global",
};

export function renderDetails(
  container: HTMLElement,
  state: AppState,
  vocabulary: Vocabulary,
  baseline: CellIndex,
  callbacks: DetailsCallbacks,
) {
  const axes = viewAxes(vocabulary);
  const focus = state.detailsFocus!;
  const resultIndex = state.lastResult ? new CellIndex(state.lastResult.cells) : baseline;
  const variables = groupAttributes(vocabulary, focus.group);
  const regionName =
    vocabulary.regions.find((r) => r.id === focus.region)?.display_name ?? focus.region;

  const mainSeries =
    focus.mode === "timeseries"
      ? variables.map((variable) => ({
          name: variable,
          values: resultIndex.years.map((y) => resultIndex.get(focus.region, y, variable)),
        }))
      : [
          {
            name: `${focus.group} (${focus.mode})`,
            values: viewSeries(
              focus.mode, resultIndex, baseline, focus.region, variables, axes.regions,
            ),
          },
        ];

  const marks = landmarks(axes, focus).map((mark) => {
    const values = viewSeries(
      mark.target.mode, resultIndex, baseline, mark.target.region,
      groupAttributes(vocabulary, mark.target.group), axes.regions,
    );
    return { mark, svg: sparklineSvg(values) };
  });

  const modeButtons = axes.modes
    .map(
      (mode) =>
        `<button class="mode ${mode === focus.mode ? "active" : ""}" data-mode="${mode}">
          ${MODE_LABELS[mode] ?? mode}</button>`,
    )
    .join("");

  const latest = mainSeries[0]?.values.at(-1) ?? 0;
  container.innerHTML = `
    <div class="details-head">
      <h2>${regionName} &middot; ${focus.group}</h2>
      <div class="modes">${modeButtons}</div>
      <span class="view-count">view of ${viewCount(axes)} &middot;
        <span data-rumor="scenario">current scenario</span></span>
    </div>
    <div class="valley">
      <aside class="landmarks side-before">
        ${marks.filter((m) => m.mark.placement === "before").map(landmarkCard).join("")}
      </aside>
      <figure class="focus-view">
        ${chartSvg(mainSeries, resultIndex.years)}
        <figcaption>
          latest: ${focus.mode === "share" ? `${latest.toFixed(1)} %` : formatMT(latest)}
          &middot; <span data-rumor="mass balance">mass balance</span> holds each year
        </figcaption>
      </figure>
      <aside class="landmarks side-after">
        ${marks.filter((m) => m.mark.placement === "after").map(landmarkCard).join("")}
      </aside>
    </div>`;

  for (const aside of Array.from(container.querySelectorAll<HTMLElement>(".landmark"))) {
    aside.addEventListener("click", () => {
      const target: DetailsFocus = {
        region: aside.dataset.region!,
        group: aside.dataset.group!,
        mode: aside.dataset.mode!,
      };
      callbacks.onFocusChange(target);
    });
  }
  for (const button of Array.from(container.querySelectorAll<HTMLButtonElement>(".mode"))) {
    button.addEventListener("click", () =>
      callbacks.onFocusChange({ ...focus, mode: button.dataset.mode! }),
    );
  }
  bindTooltips(container);
}

function landmarkCard(entry: {
  mark: { label: string; target: DetailsFocus; axis: string };
  svg: string;
}): string {
  const { mark, svg } = entry;
  return `
    <button class="landmark" data-region="${mark.target.region}"
            data-group="${mark.target.group}" data-mode="${mark.target.mode}"
            title="open ${mark.label}">
      <span class="landmark-label">${mark.label}</span>
      ${svg}
    </button>`;
}
