/**
 * UI state and its transitions, kept free of DOM concerns so the rules
 * (single active tool, classify gating, history ordering) are unit-testable.
 */

import type { InteractionRecord } from "./api.js";

export type Tool = "paint" | "erase";

export interface HistoryEntry {
  iteration: number;
  label: string;
  confidence: number;
  coverage: number;
}

export interface UiState {
  sessionId: string | null;
  width: number;
  height: number;
  tool: Tool;
  brushRadius: number;
  busy: boolean;
  error: string | null;
  history: HistoryEntry[];
}

export const DEFAULT_BRUSH_RADIUS = 12;

export function initialState(): UiState {
  return {
    sessionId: null,
    width: 0,
    height: 0,
    tool: "paint",
    brushRadius: DEFAULT_BRUSH_RADIUS,
    busy: false,
    error: null,
    history: [],
  };
}

export function selectTool(state: UiState, tool: Tool): UiState {
  return { ...state, tool };
}

export function setBrushRadius(state: UiState, radius: number): UiState {
  return { ...state, brushRadius: Math.max(1, Math.min(100, radius)) };
}

/** Classify is available once a session exists and no request is in flight. */
export function canClassify(state: UiState): boolean {
  return state.sessionId !== null && !state.busy;
}

export function canDraw(state: UiState): boolean {
  return state.sessionId !== null;
}

export function withBusy(state: UiState, busy: boolean): UiState {
  return { ...state, busy, error: busy ? null : state.error };
}

export function withError(state: UiState, error: string | null): UiState {
  return { ...state, error, busy: false };
}

export function entryFromRecord(record: InteractionRecord): HistoryEntry {
  const top = record.response.top[0];
  return {
    iteration: record.iteration,
    label: top.label,
    confidence: top.confidence,
    coverage: record.coverage,
  };
}

/** Replace the history with the server's ordering, verbatim. */
export function historyFromRecords(state: UiState, records: InteractionRecord[]): UiState {
  return { ...state, history: records.map(entryFromRecord) };
}

export function appendRecord(state: UiState, record: InteractionRecord): UiState {
  return { ...state, history: [...state.history, entryFromRecord(record)] };
}
