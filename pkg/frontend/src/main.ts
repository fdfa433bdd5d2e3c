/**
 * DOM wiring: canvas, overlay, toolbar, result panel, history list.
 *
 * The mask lives client-side as a MaskGrid mirroring the server's
 * resolution; painting renders a translucent red overlay (cosmetic only —
 * the model never sees it) and classify uploads the canonical PNG encoding
 * of a snapshot taken at click time, so drawing can continue while a
 * request is in flight.
 */

import { ApiClient, ApiError, type CreateSessionResponse } from "./api.js";
import { formatCoverage, formatPercent } from "./format.js";
import { MaskGrid, applyStrokeInPlace, type Stroke } from "./raster.js";
import { encodeMaskPng } from "./png.js";
import {
  appendRecord,
  canClassify,
  canDraw,
  historyFromRecords,
  initialState,
  selectTool,
  setBrushRadius,
  withBusy,
  withError,
  type Tool,
  type UiState,
} from "./state.js";

const OVERLAY_RGBA: [number, number, number, number] = [255, 32, 32, 115];

declare global {
  interface Window {
    XAI_BACKEND?: string;
  }
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class App {
  private readonly api = new ApiClient(window.XAI_BACKEND ?? "");
  private state: UiState = initialState();
  private mask: MaskGrid | null = null;
  private undoSnapshot: Uint8Array | null = null;
  private session: CreateSessionResponse | null = null;
  private drawing = false;
  private lastPoint: [number, number] | null = null;

  private readonly selector = el<HTMLSelectElement>("selector");
  private readonly startButton = el<HTMLButtonElement>("start");
  private readonly banner = el<HTMLDivElement>("banner");
  private readonly imageCanvas = el<HTMLCanvasElement>("image-canvas");
  private readonly overlayCanvas = el<HTMLCanvasElement>("overlay-canvas");
  private readonly paintButton = el<HTMLButtonElement>("tool-paint");
  private readonly eraseButton = el<HTMLButtonElement>("tool-erase");
  private readonly undoButton = el<HTMLButtonElement>("undo");
  private readonly clearButton = el<HTMLButtonElement>("clear");
  private readonly radiusInput = el<HTMLInputElement>("brush-radius");
  private readonly radiusValue = el<HTMLSpanElement>("brush-radius-value");
  private readonly classifyButton = el<HTMLButtonElement>("classify");
  private readonly busyIndicator = el<HTMLSpanElement>("busy");
  private readonly resultClass = el<HTMLDivElement>("result-class");
  private readonly resultConfidence = el<HTMLDivElement>("result-confidence");
  private readonly resultMeta = el<HTMLDivElement>("result-meta");
  private readonly historyList = el<HTMLOListElement>("history");

  async start(): Promise<void> {
    this.paintButton.addEventListener("click", () => this.setTool("paint"));
    this.eraseButton.addEventListener("click", () => this.setTool("erase"));
    this.undoButton.addEventListener("click", () => this.undo());
    this.clearButton.addEventListener("click", () => this.clearMask());
    this.classifyButton.addEventListener("click", () => void this.classify());
    this.startButton.addEventListener("click", () => void this.startSession());
    this.radiusInput.addEventListener("input", () => {
      this.state = setBrushRadius(this.state, Number(this.radiusInput.value));
      this.radiusValue.textContent = `${this.state.brushRadius}px`;
    });

    this.overlayCanvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    this.overlayCanvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    window.addEventListener("pointerup", () => this.pointerUp());

    this.render();
    try {
      const keys = await this.api.listCorpus();
      this.selector.replaceChildren(
        ...keys.map((key) => new Option(key.replace(/_/g, " "), key)),
      );
    } catch (error) {
      this.fail(error);
    }
  }

  private setTool(tool: Tool): void {
    this.state = selectTool(this.state, tool);
    this.render();
  }

  private fail(error: unknown): void {
    const message =
      error instanceof ApiError
        ? `${error.message} (HTTP ${error.status})`
        : error instanceof Error
          ? error.message
          : String(error);
    this.state = withError(this.state, message);
    this.render();
  }

  private async startSession(): Promise<void> {
    if (this.state.busy) return;
    this.state = withBusy(this.state, true);
    this.render();
    try {
      const session = await this.api.createSession(this.selector.value);
      this.session = session;
      this.mask = new MaskGrid(session.width, session.height);
      this.undoSnapshot = null;
      this.state = {
        ...withBusy(this.state, false),
        sessionId: session.session_id,
        width: session.width,
        height: session.height,
        history: [],
      };
      await this.loadImage(session);
      const info = await this.api.getSession(session.session_id);
      this.state = historyFromRecords(this.state, info.records);
      this.showResponse(info.records[info.records.length - 1].response.top[0]);
    } catch (error) {
      this.fail(error);
      return;
    }
    this.render();
  }

  private loadImage(session: CreateSessionResponse): Promise<void> {
    return new Promise((resolve, reject) => {
      const img = new Image();
      img.onload = () => {
        this.imageCanvas.width = session.width;
        this.imageCanvas.height = session.height;
        this.overlayCanvas.width = session.width;
        this.overlayCanvas.height = session.height;
        this.imageCanvas.getContext("2d")!.drawImage(img, 0, 0);
        this.renderOverlay();
        resolve();
      };
      img.onerror = () => reject(new Error("image failed to load"));
      img.src = this.api.imageUrl(session);
    });
  }

  /** Map pointer event coordinates from CSS pixels to canvas cell space. */
  private canvasPoint(event: PointerEvent): [number, number] {
    const rect = this.overlayCanvas.getBoundingClientRect();
    const x = ((event.clientX - rect.left) / rect.width) * this.overlayCanvas.width;
    const y = ((event.clientY - rect.top) / rect.height) * this.overlayCanvas.height;
    return [x, y];
  }

  private pointerDown(event: PointerEvent): void {
    if (!canDraw(this.state) || !this.mask) return;
    event.preventDefault();
    this.undoSnapshot = this.mask.bits.slice();
    this.drawing = true;
    this.lastPoint = this.canvasPoint(event);
    this.applySegment([this.lastPoint]);
  }

  private pointerMove(event: PointerEvent): void {
    if (!this.drawing || !this.lastPoint) return;
    const point = this.canvasPoint(event);
    // Painting segment by segment unions to the same coverage as the whole
    // polyline at once, so incremental application is faithful.
    this.applySegment([this.lastPoint, point]);
    this.lastPoint = point;
  }

  private pointerUp(): void {
    this.drawing = false;
    this.lastPoint = null;
  }

  private applySegment(points: Array<[number, number]>): void {
    if (!this.mask) return;
    const stroke: Stroke = {
      mode: this.state.tool,
      brushRadius: this.state.brushRadius,
      points,
    };
    applyStrokeInPlace(this.mask, stroke);
    this.renderOverlay();
  }

  private undo(): void {
    if (!this.mask || !this.undoSnapshot) return;
    this.mask = new MaskGrid(this.mask.width, this.mask.height, this.undoSnapshot);
    this.undoSnapshot = null;
    this.renderOverlay();
  }

  private clearMask(): void {
    if (!this.mask) return;
    this.undoSnapshot = this.mask.bits.slice();
    this.mask = new MaskGrid(this.mask.width, this.mask.height);
    this.renderOverlay();
  }

  private async classify(): Promise<void> {
    // Gated: no session, or a request already in flight (double clicks).
    if (!canClassify(this.state) || !this.mask || !this.session) return;
    const snapshot = this.mask; // mask uploaded as of click time
    const png = encodeMaskPng(snapshot.width, snapshot.height, snapshot.bits.slice());
    this.state = withBusy(this.state, true);
    this.render();
    try {
      const record = await this.api.classifyMask(this.session.session_id, png);
      this.state = appendRecord(withBusy(this.state, false), record);
      this.showResponse(record.response.top[0]);
    } catch (error) {
      this.fail(error); // mask stays as painted, ready for retry
      return;
    }
    this.render();
  }

  private showResponse(top: { label: string; confidence: number }): void {
    this.resultClass.textContent = top.label;
    this.resultConfidence.textContent = formatPercent(top.confidence);
  }

  private renderOverlay(): void {
    if (!this.mask) return;
    const ctx = this.overlayCanvas.getContext("2d")!;
    const { width, height, bits } = this.mask;
    const imageData = ctx.createImageData(width, height);
    const [r, g, b, a] = OVERLAY_RGBA;
    for (let i = 0; i < bits.length; i++) {
      if (bits[i]) {
        const o = i * 4;
        imageData.data[o] = r;
        imageData.data[o + 1] = g;
        imageData.data[o + 2] = b;
        imageData.data[o + 3] = a;
      }
    }
    ctx.clearRect(0, 0, width, height);
    ctx.putImageData(imageData, 0, 0);
  }

  private render(): void {
    const { state } = this;
    this.banner.textContent = state.error ?? "";
    this.banner.hidden = state.error === null;
    this.paintButton.classList.toggle("active", state.tool === "paint");
    this.eraseButton.classList.toggle("active", state.tool === "erase");
    this.classifyButton.disabled = !canClassify(state);
    this.startButton.disabled = state.busy;
    this.busyIndicator.hidden = !state.busy;
    this.radiusValue.textContent = `${state.brushRadius}px`;

    this.historyList.replaceChildren(
      ...state.history.map((entry) => {
        const item = document.createElement("li");
        item.textContent =
          `#${entry.iteration} ${entry.label} — ${formatPercent(entry.confidence)}` +
          ` (masked ${formatCoverage(entry.coverage)})`;
        return item;
      }),
    );
    if (this.session) {
      this.resultMeta.textContent = `session ${this.session.session_id.slice(0, 8)}…`;
    }
  }
}

window.addEventListener("DOMContentLoaded", () => {
  void new App().start();
});
