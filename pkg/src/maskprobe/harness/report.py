"""Render experiment reports and sweep heatmaps as markdown, CSV, or JSON.

Rendering is a pure function of the report contents: the same report always
produces the same bytes, and the column order is fixed as
name, interaction, coverage, class, confidence, delta.
"""

from __future__ import annotations

import csv
import io
import json

from .runner import ExperimentReport, ReportRow
from .sweep import OcclusionHeatmap

COLUMNS = ("name", "interaction", "coverage", "class", "confidence", "delta")


def _cells(row: ReportRow) -> list[str]:
    if row.error is not None:
        return [row.name, row.interaction, f"{row.coverage:.4f}",
                f"ERROR: {row.error}", "", ""]
    return [
        row.name,
        row.interaction,
        f"{row.coverage:.4f}",
        row.label or "",
        f"{row.confidence:.4f}",
        f"{row.delta:+.4f}",
    ]


def _row_dict(row: ReportRow) -> dict:
    return {
        "name": row.name,
        "interaction": row.interaction,
        "coverage": row.coverage,
        "class_index": row.class_index,
        "class": row.label,
        "confidence": row.confidence,
        "delta": row.delta,
        "error": row.error,
    }


def render_report(report: ExperimentReport, format: str = "markdown") -> bytes:
    if format in ("markdown", "md"):
        lines = []
        env = report.environment
        lines.append("# Interaction experiment report")
        lines.append("")
        lines.append(f"- model: `{env.get('model_id', '?')}`")
        lines.append(f"- fill: `{json.dumps(env.get('fill'), sort_keys=True)}`")
        lines.append(f"- resize: `{env.get('resize_variant', 'direct')}`  k: {env.get('k', 1)}")
        lines.append("")
        lines.append("| " + " | ".join(COLUMNS) + " |")
        lines.append("|" + "---|" * len(COLUMNS))
        for row in report.rows:
            lines.append("| " + " | ".join(_cells(row)) + " |")
        lines.append("")
        return "\n".join(lines).encode("utf-8")

    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in report.rows:
            writer.writerow(_cells(row))
        return buf.getvalue().encode("utf-8")

    if format == "json":
        payload = {
            "environment": report.environment,
            "rows": [_row_dict(r) for r in report.rows],
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")

    raise ValueError(f"unknown report format {format!r}")


def render_heatmap(heatmap: OcclusionHeatmap, format: str = "json") -> bytes:
    meta = {
        "baseline_class_index": heatmap.baseline_class_index,
        "baseline_label": heatmap.baseline_label,
        "baseline_confidence": heatmap.baseline_confidence,
        "patch_size": heatmap.patch_size,
        "stride": heatmap.stride,
        "fill": heatmap.fill.as_dict(),
        "model_id": heatmap.model_id,
    }
    if format == "json":
        payload = dict(meta)
        payload["grid"] = [[float(v) for v in row] for row in heatmap.grid]
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")

    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["gy", "gx", "x0", "y0", "confidence"])
        for gy in range(heatmap.grid.shape[0]):
            for gx in range(heatmap.grid.shape[1]):
                writer.writerow(
                    [gy, gx, gx * heatmap.stride, gy * heatmap.stride,
                     f"{heatmap.grid[gy, gx]:.6f}"]
                )
        return buf.getvalue().encode("utf-8")

    if format in ("markdown", "md"):
        lines = [
            "# Occlusion sweep",
            "",
            f"- baseline: `{heatmap.baseline_label}` "
            f"({heatmap.baseline_confidence:.4f}), model `{heatmap.model_id}`",
            f"- patch {heatmap.patch_size}, stride {heatmap.stride}, "
            f"fill `{json.dumps(heatmap.fill.as_dict(), sort_keys=True)}`",
            "",
        ]
        header = [""] + [str(gx) for gx in range(heatmap.grid.shape[1])]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "---|" * len(header))
        for gy in range(heatmap.grid.shape[0]):
            cells = [str(gy)] + [f"{v:.4f}" for v in heatmap.grid[gy]]
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
        return "\n".join(lines).encode("utf-8")

    raise ValueError(f"unknown heatmap format {format!r}")
