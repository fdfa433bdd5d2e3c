"""Batch experiment harness: manifest replay, occlusion sweeps, reports."""

from .manifest import ExperimentManifest, ManifestEntry, ManifestInteraction, load_manifest
from .runner import ExperimentReport, ReportRow, run_experiment
from .sweep import OcclusionHeatmap, occlusion_sweep
from .report import render_heatmap, render_report

__all__ = [
    "ExperimentManifest",
    "ManifestEntry",
    "ManifestInteraction",
    "load_manifest",
    "ExperimentReport",
    "ReportRow",
    "run_experiment",
    "OcclusionHeatmap",
    "occlusion_sweep",
    "render_report",
    "render_heatmap",
]
