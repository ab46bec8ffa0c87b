// Thin typed client over the simulation service endpoints.

import type {
  BaselineResponse,
  CheckResponse,
  ScenarioDoc,
  SimulateResponse,
  Vocabulary,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`API error ${status}`);
  }
}

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(path);
  if (!response.ok) throw new ApiError(response.status, await response.text());
  return (await response.json()) as T;
}

async function postJson<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const parsed = await response.json().catch(() => null);
  if (!response.ok) throw new ApiError(response.status, parsed);
  return parsed as T;
}

export const api = {
  vocabulary: () => getJson<Vocabulary>("/api/vocabulary"),
  baseline: () => getJson<BaselineResponse>("/api/baseline"),
  check: (script: string, inputs?: string[]) =>
    postJson<CheckResponse>("/api/check", { script, inputs }),
  simulate: (scenario: ScenarioDoc) =>
    postJson<SimulateResponse>("/api/simulate", { scenario }),
};

export type Api = typeof api;
