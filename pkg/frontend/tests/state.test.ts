import { describe, expect, it } from "vitest";

import type { InteractionRecord } from "../src/api";
import {
  appendRecord,
  canClassify,
  historyFromRecords,
  initialState,
  selectTool,
  setBrushRadius,
  withBusy,
  withError,
} from "../src/state";

function record(iteration: number, confidence: number): InteractionRecord {
  return {
    iteration,
    mask_hash: "sha256:0",
    coverage: iteration * 0.1,
    response: {
      top: [{ class_index: 207, label: "golden retriever", confidence }],
      model_id: "stub",
      inference_millis: 1,
    },
    fill: { kind: "dataset_mean" },
    timestamp: "2026-01-01T00:00:00Z",
  };
}

describe("ui state", () => {
  it("starts with paint active and classify unavailable", () => {
    const state = initialState();
    expect(state.tool).toBe("paint");
    expect(canClassify(state)).toBe(false);
  });

  it("exactly one tool is active at a time", () => {
    const state = selectTool(initialState(), "erase");
    expect(state.tool).toBe("erase");
    expect(selectTool(state, "paint").tool).toBe("paint");
  });

  it("classify is gated on session and busy flag", () => {
    let state = { ...initialState(), sessionId: "abc" };
    expect(canClassify(state)).toBe(true);
    state = withBusy(state, true);
    expect(canClassify(state)).toBe(false);
    state = withBusy(state, false);
    expect(canClassify(state)).toBe(true);
  });

  it("history mirrors server record order", () => {
    const state = historyFromRecords({ ...initialState(), sessionId: "abc" }, [
      record(0, 0.62),
      record(1, 0.49),
    ]);
    expect(state.history.map((h) => h.iteration)).toEqual([0, 1]);
    const appended = appendRecord(state, record(2, 0.31));
    expect(appended.history.map((h) => h.iteration)).toEqual([0, 1, 2]);
  });

  it("errors clear the busy flag and are replaced when work restarts", () => {
    let state = withBusy({ ...initialState(), sessionId: "abc" }, true);
    state = withError(state, "upload failed");
    expect(state.busy).toBe(false);
    expect(state.error).toBe("upload failed");
    state = withBusy(state, true);
    expect(state.error).toBeNull();
  });

  it("brush radius is clamped to a sane range", () => {
    expect(setBrushRadius(initialState(), 0).brushRadius).toBe(1);
    expect(setBrushRadius(initialState(), 500).brushRadius).toBe(100);
    expect(setBrushRadius(initialState(), 17).brushRadius).toBe(17);
  });
});
