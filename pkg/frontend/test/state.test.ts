import { describe, expect, it } from "vitest";

import { decodeState, defaultState, encodeState, stateKey, ViewHistory } from "../src/state.js";

describe("address serialization", () => {
  it("round-trips a view state through the page address", () => {
    const state = {
      seed: "J Am Soc Inf Sci Tec",
      direction: "citing" as const,
      thresholdFraction: 0.001,
      cosineCutoff: 0.35,
      rngSeed: 7,
    };
    const decoded = decodeState(encodeState(state));
    expect(decoded).toEqual(state);
  });

  it("tolerates a leading hash and fills defaults", () => {
    const decoded = decodeState("#seed=Scientometrics");
    expect(decoded).toEqual(defaultState("Scientometrics"));
  });

  it("rejects nonsense", () => {
    expect(decodeState("")).toBeNull();
    expect(decodeState("seed=A&threshold=7")).toBeNull();
    expect(decodeState("seed=A&cutoff=2")).toBeNull();
  });
});

describe("history", () => {
  it("supports back-navigation and ignores duplicate frames", () => {
    const history = new ViewHistory();
    const a = defaultState("A");
    const b = defaultState("B");
    history.push(a);
    history.push({ ...a });
    history.push(b);
    expect(history.canGoBack).toBe(true);
    expect(history.back()).toEqual(a);
    expect(history.canGoBack).toBe(false);
    expect(history.back()).toBeNull();
    expect(history.current).toEqual(a);
  });

  it("keys views by all parameters", () => {
    const a = defaultState("A");
    expect(stateKey(a)).not.toBe(stateKey({ ...a, cosineCutoff: 0.3 }));
    expect(stateKey(a)).toBe(stateKey({ ...a }));
  });
});
