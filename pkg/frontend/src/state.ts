// Single scenario of record plus the tab/tutorial state machine.
//
// Both tabs render from this object, so an edit made anywhere (a slider, the
// prototype drawer) is immediately visible everywhere on the next render.
// Simulation responses are serialized through monotone sequence numbers: the
// rendered result always corresponds to the latest acknowledged request and
// stale responses are dropped.

import type { LeverSpec, ScenarioDoc, SimulateResponse } from "./types.js";

export type TabName = "overview" | "details";

// Four-beat teaching structure, advanced by use, never by modal tutorials:
// first render -> first lever move -> first details visit -> first drawer run.
export const HAYASHIDA_STAGES = [
  "introduction",
  "development",
  "twist",
  "conclusion",
] as const;
export type HayashidaStage = (typeof HAYASHIDA_STAGES)[number];

export interface DetailsFocus {
  region: string;
  group: string;
  mode: string;
}

const PROTOTYPE_LEVER_ID = "prototype";

export class AppState {
  activeTab: TabName = "overview";
  hayashidaStage: HayashidaStage = "introduction";
  leverInteracted = false;
  detailsFocus: DetailsFocus | null = null;
  offline = false;

  readonly levers: LeverSpec[];
  readonly years: [number, number];
  values: Record<string, Record<string, number>> = {};
  prototypeScript: string | null = null;

  lastResult: SimulateResponse | null = null;
  private nextRequestId = 0;
  private lastAppliedId = 0;

  constructor(levers: LeverSpec[], years: [number, number]) {
    this.levers = levers;
    this.years = years;
    for (const lever of levers) {
      this.values[lever.id] = {};
      for (const [param, spec] of Object.entries(lever.inputs)) {
        this.values[lever.id][param] = spec.default;
      }
    }
  }

  // -- gate + tutorial stage --------------------------------------------

  get detailsUnlocked(): boolean {
    return this.leverInteracted;
  }

  private advanceStage(target: HayashidaStage) {
    const current = HAYASHIDA_STAGES.indexOf(this.hayashidaStage);
    const proposed = HAYASHIDA_STAGES.indexOf(target);
    if (proposed > current) this.hayashidaStage = target;
  }

  noteLeverMove() {
    this.leverInteracted = true;
    this.advanceStage("development");
  }

  enterDetails(focus: DetailsFocus): boolean {
    if (!this.detailsUnlocked) return false;
    this.activeTab = "details";
    if (this.detailsFocus === null) this.detailsFocus = focus;
    this.advanceStage("twist");
    return true;
  }

  enterOverview() {
    this.activeTab = "overview";
  }

  noteDrawerRun() {
    this.advanceStage("conclusion");
  }

  // -- scenario of record -------------------------------------------------

  setValue(leverId: string, param: string, value: number) {
    const lever = this.levers.find((l) => l.id === leverId);
    if (!lever || !(param in lever.inputs)) return;
    const spec = lever.inputs[param];
    this.values[leverId][param] = Math.min(Math.max(value, spec.min), spec.max);
    this.noteLeverMove();
  }

  setPrototype(script: string) {
    this.prototypeScript = script;
  }

  removePrototype() {
    this.prototypeScript = null;
  }

  scenarioDoc(): ScenarioDoc {
    const levers: ScenarioDoc["levers"] = this.levers.map((lever) => ({
      id: lever.id,
      display_name: lever.display_name,
      inputs: Object.fromEntries(
        Object.entries(lever.inputs).map(([param, spec]) => [
          param,
          { default: spec.default, min: spec.min, max: spec.max },
        ]),
      ),
      inline_script: lever.inline_script,
    }));
    const values: ScenarioDoc["values"] = {};
    for (const [leverId, params] of Object.entries(this.values)) {
      values[leverId] = { ...params };
    }
    if (this.prototypeScript !== null) {
      levers.push({
        id: PROTOTYPE_LEVER_ID,
        display_name: "Prototype",
        inputs: {},
        inline_script: this.prototypeScript,
      });
    }
    return { levers, values, years: this.years };
  }

  // -- request sequencing ---------------------------------------------------

  beginRequest(): number {
    return ++this.nextRequestId;
  }

  applyResult(requestId: number, result: SimulateResponse): boolean {
    if (requestId <= this.lastAppliedId) return false;
    this.lastAppliedId = requestId;
    this.lastResult = result;
    return true;
  }

  get inFlight(): boolean {
    return this.nextRequestId > this.lastAppliedId;
  }
}

// Trailing-edge debouncer for slider storms; ~150 ms of quiescence by default.
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs = 150,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
}
