// Boot: load config and data (cache-first through the service worker), build
// the single scenario state, wire both tabs, keep them in sync.

import { api, ApiError } from "./api.js";
import { renderDetails } from "./details.js";
import { PrototypeDrawer } from "./drawer.js";
import { renderOverview } from "./overview.js";
import { CellIndex } from "./series.js";
import { AppState, debounce } from "./state.js";
import type { LeverSpec, Vocabulary } from "./types.js";
import { defaultFocus, viewAxes } from "./views.js";

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
}

async function loadLevers(): Promise<LeverSpec[]> {
  const response = await fetch("/levers.json");
  if (!response.ok) throw new Error("levers.json unavailable");
  return (await response.json()) as LeverSpec[];
}

async function boot() {
  if ("serviceWorker" in navigator) {
    navigator.serviceWorker.register("/sw.js").catch(() => {
      // no offline support, app still works online
    });
  }

  let vocabulary: Vocabulary;
  let levers: LeverSpec[];
  let baselineCells;
  try {
    [vocabulary, levers, baselineCells] = await Promise.all([
      api.vocabulary(),
      loadLevers(),
      api.baseline(),
    ]);
  } catch {
    // cold start with no network and no cache: be explicit, fake nothing
    el("empty-cache").hidden = false;
    el("app").hidden = true;
    return;
  }

  const baseline = new CellIndex(baselineCells.cells);
  const state = new AppState(levers, baselineCells.years);
  const axes = viewAxes(vocabulary);

  const overviewPanel = el("overview");
  const detailsPanel = el("details-view");
  const offlineBanner = el("offline-banner");
  const tabOverview = el("tab-overview") as HTMLButtonElement;
  const tabDetails = el("tab-details") as HTMLButtonElement;
  const detailsSection = el("details");
  const drawerScript = el("drawer-script") as HTMLTextAreaElement;
  const drawerErrors = el("drawer-errors");
  const drawerRemove = el("drawer-remove") as HTMLButtonElement;
  const drawerState = el("drawer-state");

  const drawer = new PrototypeDrawer(state, api, {
    onScenarioChanged: () => {
      void simulate();
    },
  });

  function renderDrawer() {
    const lines = drawer.violationLines();
    if (drawer.runtimeError) lines.push(drawer.runtimeError);
    drawerErrors.innerHTML = lines
      .map((line) => `<div class="violation">${line}</div>`)
      .join("");
    drawerRemove.disabled = !drawer.active;
    drawerState.textContent = drawer.active ? "live in scenario" : "not active";
  }

  async function simulate() {
    const requestId = state.beginRequest();
    try {
      const result = await api.simulate(state.scenarioDoc());
      state.offline = false;
      if (state.applyResult(requestId, result)) render();
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        drawer.noteSimulateFailure(error.body as never);
        renderDrawer();
      } else {
        // network down: keep the last honest results, say so
        state.offline = true;
        render();
      }
    }
  }
  const debouncedSimulate = debounce(() => void simulate(), 150);

  function render() {
    offlineBanner.hidden = !state.offline;
    tabOverview.classList.toggle("active", state.activeTab === "overview");
    tabDetails.classList.toggle("active", state.activeTab === "details");
    tabDetails.disabled = !state.detailsUnlocked;
    tabDetails.title = state.detailsUnlocked
      ? ""
      : "move a lever on the overview first";
    overviewPanel.parentElement!.hidden = state.activeTab !== "overview";
    detailsSection.hidden = state.activeTab !== "details";
    document.body.dataset.stage = state.hayashidaStage;

    if (state.activeTab === "overview") {
      renderOverview(overviewPanel, state, vocabulary, baseline, {
        onLeverInput: (leverId, param, value) => {
          state.setValue(leverId, param, value);
          tabDetails.disabled = !state.detailsUnlocked;
          debouncedSimulate();
        },
        onEnterDetails: () => {
          if (state.enterDetails(defaultFocus(axes))) render();
        },
      });
    } else {
      renderDetails(detailsPanel, state, vocabulary, baseline, {
        onFocusChange: (focus) => {
          state.detailsFocus = focus; // pure navigation, no re-simulation
          render();
        },
      });
      renderDrawer();
    }
  }

  const debouncedDrawerEdit = debounce(async (script: string) => {
    await drawer.scriptEdited(script);
    renderDrawer();
  }, 300);
  drawerScript.addEventListener("input", () => debouncedDrawerEdit(drawerScript.value));
  drawerRemove.addEventListener("click", () => {
    drawer.remove();
    drawerScript.value = "";
    renderDrawer();
  });

  tabOverview.addEventListener("click", () => {
    state.enterOverview();
    render();
  });
  tabDetails.addEventListener("click", () => {
    if (state.enterDetails(defaultFocus(axes))) render();
  });

  render();
  void simulate(); // identity scenario on fresh load; headline equals baseline
}

void boot();
