"""xai-harness: batch experiments, occlusion sweeps, and the HTTP service.

Thin argument-parsing layer over the harness and service packages.
Exit codes: 0 success, 1 usage error, 2 asset error, 3 model error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .assets import DEFAULT_LABELS_PATH, DEFAULT_STUB_MODEL_PATH
from .errors import (
    ImageDecodeError,
    InferenceError,
    InvalidMaskError,
    ManifestError,
    MaskParseError,
    ModelLoadError,
)
from .image import decode_image
from .harness import load_manifest, occlusion_sweep, render_heatmap, render_report, run_experiment
from .inference import load_model
from .masking import FillPolicy
from .service.config import ENV_LABELS, ENV_MODEL, Settings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ASSET = 2
EXIT_MODEL = 3


class _Parser(argparse.ArgumentParser):
    # The contract pins usage errors to exit code 1 (argparse defaults to 2).
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_model() -> str:
    return os.environ.get(ENV_MODEL) or str(DEFAULT_STUB_MODEL_PATH)


def _default_labels() -> str:
    return os.environ.get(ENV_LABELS) or str(DEFAULT_LABELS_PATH)


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", default=_default_model(),
                        help="model file (.onnx or stub .json); env XAI_MODEL_PATH")
    parser.add_argument("--labels", default=_default_labels(),
                        help="label table, one class name per line; env XAI_LABELS_PATH")
    parser.add_argument("--resize-variant", choices=("direct", "crop"), default="direct",
                        help="preprocessing variant (default: direct bilinear 224x224)")


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("md", "markdown", "csv", "json"), default="md")
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")


def _write_out(data: bytes, out: str) -> None:
    if out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _parse_fill(text: str | None) -> FillPolicy | None:
    if text is None:
        return None
    try:
        return FillPolicy.parse(text)
    except ValueError as exc:
        print(f"xai-harness: error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xai-harness",
                     description="Occlusion probing for image classifiers")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a manifest of images and masks")
    run.add_argument("--manifest", required=True)
    run.add_argument("--fill", default=None, help="mean | black | #RRGGBB "
                     "(overrides the manifest's fill)")
    _add_model_args(run)
    _add_output_args(run)

    sweep = sub.add_parser("sweep", help="grid occlusion sensitivity sweep")
    sweep.add_argument("--image", required=True)
    sweep.add_argument("--patch", type=int, required=True)
    sweep.add_argument("--stride", type=int, required=True)
    sweep.add_argument("--fill", default="mean")
    _add_model_args(sweep)
    _add_output_args(sweep)

    serve = sub.add_parser("serve", help="start the HTTP session service")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--model", default=None)
    serve.add_argument("--labels", default=None)
    serve.add_argument("--corpus-dir", default=None)
    serve.add_argument("--store-dir", default=None)
    serve.add_argument("--ui-dir", default=None)
    serve.add_argument("--remote-image-url", default=None)
    serve.add_argument("--k", type=int, default=None, help="default top-k per session")
    serve.add_argument("--session-ttl", type=float, default=None,
                       help="optional session expiry in seconds")
    return parser


def _cmd_run(args) -> int:
    fill_override = _parse_fill(args.fill)
    try:
        manifest = load_manifest(args.manifest, fill_override=fill_override)
    except ManifestError as exc:
        print(f"xai-harness: asset error: {exc}", file=sys.stderr)
        return EXIT_ASSET
    try:
        model = load_model(args.model, args.labels, reproducible=True)
    except ModelLoadError as exc:
        print(f"xai-harness: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    try:
        report = run_experiment(manifest, model, resize_variant=args.resize_variant)
    except (ImageDecodeError, MaskParseError, InvalidMaskError, OSError) as exc:
        print(f"xai-harness: asset error: {exc}", file=sys.stderr)
        return EXIT_ASSET
    except InferenceError as exc:
        print(f"xai-harness: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    _write_out(render_report(report, format=args.format), args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    fill = _parse_fill(args.fill)
    try:
        model = load_model(args.model, args.labels, reproducible=True)
    except ModelLoadError as exc:
        print(f"xai-harness: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    try:
        image = decode_image(Path(args.image).read_bytes())
    except (OSError, ImageDecodeError) as exc:
        print(f"xai-harness: asset error: {exc}", file=sys.stderr)
        return EXIT_ASSET
    try:
        heatmap = occlusion_sweep(
            image, model, patch_size=args.patch, stride=args.stride, fill=fill,
            resize_variant=args.resize_variant,
        )
    except ValueError as exc:
        print(f"xai-harness: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InferenceError as exc:
        print(f"xai-harness: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    _write_out(render_heatmap(heatmap, format=args.format), args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    settings = Settings.from_env()
    if args.model:
        settings.model_path = Path(args.model)
    if args.labels:
        settings.labels_path = Path(args.labels)
    if args.corpus_dir:
        settings.corpus_dir = Path(args.corpus_dir)
    if args.store_dir:
        settings.store_dir = Path(args.store_dir)
    if args.ui_dir:
        settings.ui_dir = Path(args.ui_dir)
    if args.remote_image_url:
        settings.remote_image_url = args.remote_image_url
    if args.host:
        settings.bind_host = args.host
    if args.port:
        settings.bind_port = args.port
    if args.k:
        settings.default_k = args.k
    if args.session_ttl:
        settings.session_ttl_seconds = args.session_ttl

    try:
        app = create_app(settings)
    except ModelLoadError as exc:
        print(f"xai-harness: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except RuntimeError as exc:
        print(f"xai-harness: startup error: {exc}", file=sys.stderr)
        return EXIT_ASSET
    uvicorn.run(app, host=settings.bind_host, port=settings.bind_port, log_level="info")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    if args.command == "serve":
        return _cmd_serve(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
