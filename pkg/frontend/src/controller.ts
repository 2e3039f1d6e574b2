// Explorer behaviour: each user action (re-center, flip, threshold, cutoff,
// back) maps to exactly one environment request — or to none when the view
// is already cached (history re-centers are cache hits). Only the latest
// in-flight request may update the view.

import type { Transport } from "./api.js";
import type { EnvironmentPayload } from "./types.js";
import { FALLBACK_THRESHOLD, ViewHistory, ViewState, stateKey } from "./state.js";

const DEGENERATE_MARKER = "consider threshold_fraction";

export interface View {
  state: ViewState;
  payload: EnvironmentPayload;
  /** true when the payload carries the degenerate-map warning */
  showFallbackBanner: boolean;
  fromCache: boolean;
}

export function isDegenerate(payload: EnvironmentPayload): boolean {
  return payload.warnings.some((warning) => warning.includes(DEGENERATE_MARKER));
}

export class ExplorerController {
  readonly history = new ViewHistory();
  private cache = new Map<string, EnvironmentPayload>();
  private sequence = 0;
  private inFlight: AbortController | null = null;
  onView: (view: View) => void = () => {};

  constructor(private transport: Transport) {}

  get current(): ViewState | null {
    return this.history.current;
  }

  /** Navigate to a state: at most one request, stale responses dropped. */
  async show(state: ViewState, pushHistory = true): Promise<View | null> {
    if (pushHistory) this.history.push(state);
    const key = stateKey(state);
    const cached = this.cache.get(key);
    if (cached) {
      const view = this.asView(state, cached, true);
      this.onView(view);
      return view;
    }

    const ticket = ++this.sequence;
    this.inFlight?.abort();
    const controller = typeof AbortController !== "undefined" ? new AbortController() : null;
    this.inFlight = controller;
    const payload = await this.transport.fetchEnvironment(state, controller?.signal);
    if (ticket !== this.sequence) return null; // a newer action superseded this one
    this.inFlight = null;
    this.cache.set(key, payload);
    const view = this.asView(state, payload, false);
    this.onView(view);
    return view;
  }

  /** Node click: same direction and parameters, new seed. */
  recenter(seed: string): Promise<View | null> {
    const current = this.requireCurrent();
    return this.show({ ...current, seed });
  }

  flipDirection(): Promise<View | null> {
    const current = this.requireCurrent();
    const direction = current.direction === "citing" ? "cited" : "citing";
    return this.show({ ...current, direction });
  }

  applyThreshold(thresholdFraction: number): Promise<View | null> {
    const current = this.requireCurrent();
    return this.show({ ...current, thresholdFraction });
  }

  /** The banner action: retry the same view at the 0.1% threshold. */
  applyFallbackThreshold(): Promise<View | null> {
    return this.applyThreshold(FALLBACK_THRESHOLD);
  }

  applyCutoff(cosineCutoff: number): Promise<View | null> {
    const current = this.requireCurrent();
    return this.show({ ...current, cosineCutoff });
  }

  /** Back-navigation; cached views render without a request. */
  back(): Promise<View | null> {
    const previous = this.history.back();
    if (!previous) return Promise.resolve(null);
    return this.show(previous, false);
  }

  searchJournals(query: string) {
    return this.transport.fetchJournals(query);
  }

  fetchFactors() {
    return this.transport.fetchFactors(this.requireCurrent());
  }

  private requireCurrent(): ViewState {
    const current = this.history.current;
    if (!current) throw new Error("no current view");
    return current;
  }

  private asView(state: ViewState, payload: EnvironmentPayload, fromCache: boolean): View {
    return {
      state,
      payload,
      showFallbackBanner: isDegenerate(payload),
      fromCache,
    };
  }
}
