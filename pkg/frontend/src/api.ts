// API client: one fetch per user action, latest-wins cancellation for the
// environment request (a stale response must never overwrite a newer view).

import type { EnvironmentPayload, FactorPayload, JournalInfo } from "./types.js";
import type { ViewState } from "./state.js";

export interface Transport {
  fetchEnvironment(state: ViewState, signal?: AbortSignal): Promise<EnvironmentPayload>;
  fetchJournals(query: string): Promise<JournalInfo[]>;
  fetchFactors(state: ViewState): Promise<FactorPayload>;
}

export function environmentQuery(state: ViewState): string {
  return new URLSearchParams({
    seed: state.seed,
    direction: state.direction,
    threshold_fraction: String(state.thresholdFraction),
    cosine_cutoff: String(state.cosineCutoff),
    rng_seed: String(state.rngSeed),
    want_layout: "true",
  }).toString();
}

export function downloadUrl(state: ViewState, format: "net" | "dl" | "svg"): string {
  return `/api/environment.${format}?${environmentQuery(state)}`;
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      detail = ((await response.json()) as { detail?: string }).detail ?? detail;
    } catch {
      // keep the status text
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export class HttpTransport implements Transport {
  constructor(private base: string = "") {}

  fetchEnvironment(state: ViewState, signal?: AbortSignal): Promise<EnvironmentPayload> {
    return fetch(`${this.base}/api/environment?${environmentQuery(state)}`, { signal }).then(
      (r) => asJson<EnvironmentPayload>(r),
    );
  }

  fetchJournals(query: string): Promise<JournalInfo[]> {
    const params = new URLSearchParams({ q: query, limit: "12" });
    return fetch(`${this.base}/api/journals?${params}`).then((r) => asJson<JournalInfo[]>(r));
  }

  fetchFactors(state: ViewState): Promise<FactorPayload> {
    const params = new URLSearchParams({
      seed: state.seed,
      direction: state.direction,
      threshold_fraction: String(state.thresholdFraction),
    });
    return fetch(`${this.base}/api/factors?${params}`).then((r) => asJson<FactorPayload>(r));
  }
}
