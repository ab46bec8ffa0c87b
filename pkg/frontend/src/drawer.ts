// The prototype drawer: edit lever code inside the live app, no build step.
//
// Every edit is statically checked server-side; violations render inline at
// the reported line:column and leave the scenario untouched. A clean check
// promotes the script to a lever of the current scenario and triggers one
// simulate round-trip; deleting it restores the previous results exactly.

import type { Api } from "./api.js";
import type { AppState } from "./state.js";
import type { Violation } from "./types.js";

export interface DrawerCallbacks {
  onScenarioChanged: () => void; // owner re-simulates + re-renders
}

export class PrototypeDrawer {
  violations: Violation[] = [];
  runtimeError: string | null = null;
  active = false;

  constructor(
    private readonly state: AppState,
    private readonly api: Pick<Api, "check">,
    private readonly callbacks: DrawerCallbacks,
  ) {}

  async scriptEdited(script: string): Promise<void> {
    this.runtimeError = null;
    if (script.trim() === "") {
      this.violations = [];
      this.remove();
      return;
    }
    const response = await this.api.check(script);
    this.violations = response.violations;
    if (this.violations.length > 0) return; // scenario stays as it was
    this.state.setPrototype(script);
    this.state.noteDrawerRun();
    this.active = true;
    this.callbacks.onScenarioChanged();
  }

  remove(): void {
    if (!this.active && this.state.prototypeScript === null) return;
    this.state.removePrototype();
    this.active = false;
    this.callbacks.onScenarioChanged();
  }

  noteSimulateFailure(detail: { lever_id?: string; year?: number; line?: number; column?: number } | null) {
    if (detail && detail.lever_id === "prototype") {
      const where = detail.line !== undefined ? ` at ${detail.line}:${detail.column}` : "";
      this.runtimeError = `script failed in year ${detail.year}${where}`;
    }
  }

  violationLines(): string[] {
    return this.violations.map(
      (v) => `${v.line}:${v.column} ${v.code}: ${v.message}`,
    );
  }
}
