/** Display formatting helpers. */

/**
 * Confidence fraction -> percentage with one decimal, e.g. 0.4932 -> "49.3%".
 * Pinned to round(confidence * 1000) / 10 so the display rule is testable.
 */
export function formatPercent(confidence: number): string {
  return (Math.round(confidence * 1000) / 10).toFixed(1) + "%";
}

/** Mask coverage fraction for history rows, e.g. 0.3125 -> "31.3%". */
export function formatCoverage(coverage: number): string {
  return formatPercent(coverage);
}
