/**
 * Client-side brush rasterization.
 *
 * This must stay cell-for-cell identical to the server's mask engine: a
 * stroke covers every cell whose center (integer coordinates) lies within
 * brushRadius of the polyline — disks at each point plus capsules around
 * consecutive segments. JS numbers are IEEE float64, and the arithmetic
 * below mirrors the server's operation order exactly, so borderline cells
 * (distance equal to the radius) land on the same side. The shared golden
 * fixtures in tests/golden pin this byte-for-byte.
 */

export type StrokeMode = "paint" | "erase";

export interface Stroke {
  mode: StrokeMode;
  brushRadius: number;
  points: Array<[number, number]>;
}

export class MaskGrid {
  readonly width: number;
  readonly height: number;
  readonly bits: Uint8Array;

  constructor(width: number, height: number, bits?: Uint8Array) {
    if (width < 1 || height < 1) {
      throw new Error(`mask dimensions must be >= 1, got ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.bits = bits ?? new Uint8Array(width * height);
    if (this.bits.length !== width * height) {
      throw new Error("bit buffer does not match dimensions");
    }
  }

  clone(): MaskGrid {
    return new MaskGrid(this.width, this.height, this.bits.slice());
  }

  coverage(): number {
    let painted = 0;
    for (const b of this.bits) painted += b;
    return painted / (this.width * this.height);
  }
}

function diskCoverage(
  cov: Uint8Array,
  width: number,
  height: number,
  cx: number,
  cy: number,
  r: number,
): void {
  const x0 = Math.max(0, Math.ceil(cx - r));
  const x1 = Math.min(width - 1, Math.floor(cx + r));
  const y0 = Math.max(0, Math.ceil(cy - r));
  const y1 = Math.min(height - 1, Math.floor(cy + r));
  const r2 = r * r;
  for (let y = y0; y <= y1; y++) {
    for (let x = x0; x <= x1; x++) {
      const dx = x - cx;
      const dy = y - cy;
      if (dx * dx + dy * dy <= r2) cov[y * width + x] = 1;
    }
  }
}

function capsuleCoverage(
  cov: Uint8Array,
  width: number,
  height: number,
  ax: number,
  ay: number,
  bx: number,
  by: number,
  r: number,
): void {
  const abx = bx - ax;
  const aby = by - ay;
  const len2 = abx * abx + aby * aby;
  if (len2 === 0) return; // endpoint disks already cover degenerate segments
  const x0 = Math.max(0, Math.ceil(Math.min(ax, bx) - r));
  const x1 = Math.min(width - 1, Math.floor(Math.max(ax, bx) + r));
  const y0 = Math.max(0, Math.ceil(Math.min(ay, by) - r));
  const y1 = Math.min(height - 1, Math.floor(Math.max(ay, by) + r));
  const r2 = r * r;
  for (let y = y0; y <= y1; y++) {
    for (let x = x0; x <= x1; x++) {
      let t = ((x - ax) * abx + (y - ay) * aby) / len2;
      if (t < 0) t = 0;
      else if (t > 1) t = 1;
      const dx = x - (ax + t * abx);
      const dy = y - (ay + t * aby);
      if (dx * dx + dy * dy <= r2) cov[y * width + x] = 1;
    }
  }
}

export function strokeCoverage(width: number, height: number, stroke: Stroke): Uint8Array {
  if (stroke.points.length === 0) throw new Error("stroke needs at least one point");
  if (!(stroke.brushRadius > 0)) throw new Error("brushRadius must be positive");
  const cov = new Uint8Array(width * height);
  for (const [x, y] of stroke.points) {
    diskCoverage(cov, width, height, x, y, stroke.brushRadius);
  }
  for (let i = 0; i + 1 < stroke.points.length; i++) {
    const [ax, ay] = stroke.points[i];
    const [bx, by] = stroke.points[i + 1];
    capsuleCoverage(cov, width, height, ax, ay, bx, by, stroke.brushRadius);
  }
  return cov;
}

/** Returns a new grid with the stroke applied; the input is untouched. */
export function applyStroke(mask: MaskGrid, stroke: Stroke): MaskGrid {
  const out = mask.clone();
  applyStrokeInPlace(out, stroke);
  return out;
}

/** In-place variant used while a pointer drag is in progress. */
export function applyStrokeInPlace(mask: MaskGrid, stroke: Stroke): void {
  const cov = strokeCoverage(mask.width, mask.height, stroke);
  const value = stroke.mode === "paint" ? 1 : 0;
  for (let i = 0; i < cov.length; i++) {
    if (cov[i]) mask.bits[i] = value;
  }
}
