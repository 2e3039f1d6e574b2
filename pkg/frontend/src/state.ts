// View state: what the user is looking at, serializable to the page address
// so a view can be shared, plus a history stack for back-navigation.

import type { Direction } from "./types.js";

export interface ViewState {
  seed: string;
  direction: Direction;
  thresholdFraction: number; // 0.01 (1%), 0.001 (0.1%) or a custom value
  cosineCutoff: number;
  rngSeed: number;
}

export const DEFAULT_THRESHOLD = 0.01;
export const FALLBACK_THRESHOLD = 0.001;

export function defaultState(seed: string): ViewState {
  return {
    seed,
    direction: "cited",
    thresholdFraction: DEFAULT_THRESHOLD,
    cosineCutoff: 0.2,
    rngSeed: 0,
  };
}

export function stateKey(state: ViewState): string {
  return [
    state.seed,
    state.direction,
    state.thresholdFraction,
    state.cosineCutoff,
    state.rngSeed,
  ].join("|");
}

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams({
    seed: state.seed,
    direction: state.direction,
    threshold: String(state.thresholdFraction),
    cutoff: String(state.cosineCutoff),
    rng: String(state.rngSeed),
  });
  return params.toString();
}

export function decodeState(encoded: string): ViewState | null {
  const params = new URLSearchParams(encoded.replace(/^#/, ""));
  const seed = params.get("seed");
  if (!seed) return null;
  const direction = params.get("direction");
  const threshold = Number(params.get("threshold") ?? DEFAULT_THRESHOLD);
  const cutoff = Number(params.get("cutoff") ?? 0.2);
  const rng = Number(params.get("rng") ?? 0);
  if (!Number.isFinite(threshold) || threshold <= 0 || threshold >= 1) return null;
  if (!Number.isFinite(cutoff) || cutoff < 0 || cutoff > 1) return null;
  return {
    seed,
    direction: direction === "citing" || direction === "combined" ? direction : "cited",
    thresholdFraction: threshold,
    cosineCutoff: cutoff,
    rngSeed: Number.isFinite(rng) ? rng : 0,
  };
}

/** Navigation history with back support; the current view sits on top. */
export class ViewHistory {
  private stack: ViewState[] = [];

  get current(): ViewState | null {
    return this.stack.length ? this.stack[this.stack.length - 1] : null;
  }

  get canGoBack(): boolean {
    return this.stack.length > 1;
  }

  push(state: ViewState): void {
    const top = this.current;
    if (top && stateKey(top) === stateKey(state)) return; // no duplicate frames
    this.stack.push(state);
  }

  back(): ViewState | null {
    if (!this.canGoBack) return null;
    this.stack.pop();
    return this.current;
  }
}
