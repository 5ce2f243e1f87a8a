"""Batch command line front-end.

Downscales every input by the chosen method, optionally scores each output
against a same-named reference image, and emits a CSV or Markdown report
(with companion figures) into the output directory.  Images are independent,
so the batch may run on several worker threads; row order and results are
identical regardless of ``--jobs``.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from said.core import Colorspace, Image, Plane, clamp_unit_image
from said.errors import SaidError
from said.io import load, save
from said.metrics import psnr, ssim
from said.pipeline import SaidParams, SaidTrace, baseline_downscale, said_downscale
from said.report import (
    ReportRow,
    render_metrics_figure,
    render_trace_figure,
    write_report,
)
from said.resample import ScaleSpec

SUPPORTED_SUFFIXES = (".png", ".ppm", ".pgm")
JOBS_ENV_VAR = "SAID_JOBS"


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...]
    method: str
    scale: float
    output_dir: str
    params: SaidParams = SaidParams()
    reference_dir: str | None = None
    report: str = "csv"
    trace: bool = False
    jobs: int = 1


@dataclass
class RunResult:
    rows: list[ReportRow] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    report_path: Path | None = None
    figure_paths: list[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parse_args(argv: list[str] | None = None) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="said",
        description="Structure-aware image downscaler with baselines and PSNR/SSIM reports.",
    )
    parser.add_argument("inputs", nargs="+", help="image files or directories of images")
    parser.add_argument(
        "--method",
        choices=("said", "bicubic", "lanczos"),
        default="said",
        help="downscaling method (default: said)",
    )
    parser.add_argument(
        "--scale", type=float, required=True, help="downscale factor, any real > 1"
    )
    parser.add_argument("--out", default="out", help="output directory (default: ./out)")
    defaults = SaidParams()
    parser.add_argument("--sigma", type=float, default=defaults.sigma, help="blur std-dev")
    parser.add_argument("--gamma", type=float, default=defaults.gamma, help="sharpening strength")
    parser.add_argument("--alpha", type=float, default=defaults.alpha, help="texture edge gain")
    parser.add_argument("--beta", type=float, default=defaults.beta, help="texture floor")
    parser.add_argument("--antialias", action="store_true", help="prefilter the resampler")
    parser.add_argument(
        "--texture-normalize",
        action="store_true",
        help="experimental min-max rescale of the texture map",
    )
    parser.add_argument(
        "--reference-dir",
        default=None,
        help="directory of same-named reference images for PSNR/SSIM",
    )
    parser.add_argument(
        "--report", choices=("csv", "markdown"), default="csv", help="report format"
    )
    parser.add_argument(
        "--trace", action="store_true", help="dump pipeline intermediates (said only)"
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=_default_jobs(),
        help=f"worker threads (default: ${JOBS_ENV_VAR} or 1)",
    )
    args = parser.parse_args(argv)
    if not args.scale > 1.0:
        parser.error(f"--scale must exceed 1, got {args.scale}")
    if args.jobs < 1:
        parser.error(f"--jobs must be >= 1, got {args.jobs}")
    try:
        params = SaidParams(
            sigma=args.sigma,
            gamma=args.gamma,
            alpha=args.alpha,
            beta=args.beta,
            antialias=args.antialias,
            texture_normalize=args.texture_normalize,
        )
    except SaidError as exc:
        parser.error(str(exc))
    return RunConfig(
        inputs=tuple(args.inputs),
        method=args.method,
        scale=args.scale,
        output_dir=args.out,
        params=params,
        reference_dir=args.reference_dir,
        report=args.report,
        trace=args.trace,
        jobs=args.jobs,
    )


def expand_inputs(inputs: tuple[str, ...]) -> tuple[list[Path], list[str]]:
    """Resolve files and directories to a sorted list of image paths."""
    files: list[Path] = []
    errors: list[str] = []
    for raw in inputs:
        p = Path(raw)
        if p.is_dir():
            found = sorted(
                child for child in p.iterdir() if child.suffix.lower() in SUPPORTED_SUFFIXES
            )
            if not found:
                errors.append(f"{p}: directory contains no supported images")
            files.extend(found)
        elif p.is_file():
            files.append(p)
        else:
            errors.append(f"{p}: no such file or directory")
    return files, errors


def _output_name(src: Path, method: str, scale: float) -> str:
    return f"{src.stem}_{method}_x{scale:g}{src.suffix}"


def _texture_preview(trace: SaidTrace) -> Image:
    # map the signed response to [0,1] around mid-gray for visual dumps
    t = trace.texture.plane.data
    span = max(abs(float(t.min())), abs(float(t.max())))
    shown = np.full_like(t, 0.5) if span == 0.0 else 0.5 + 0.5 * (t / span)
    return Image((Plane(shown),), Colorspace.GRAY)


def _dump_trace(trace: SaidTrace, result: Image, out_dir: Path, base: str) -> list[Path]:
    written: list[Path] = []

    def dump(img: Image, stage: str) -> None:
        path = out_dir / f"{base}_{stage}.png"
        save(clamp_unit_image(img), path)
        written.append(path)

    dump(Image((trace.edge_map.plane,), Colorspace.GRAY), "edgemap")
    dump(Image((trace.blurred,), Colorspace.GRAY), "blurred")
    dump(trace.sharpened, "sharpened")
    dump(trace.bicubic, "bicubic")
    dump(_texture_preview(trace), "texture")
    dump(trace.blended, "blended")
    figure = render_trace_figure(trace, result, out_dir / f"{base}_stages.png")
    written.append(figure)
    return written


@dataclass
class _FileOutcome:
    row: ReportRow
    error: str | None = None
    trace_paths: list[Path] = field(default_factory=list)


def _process_one(src: Path, config: RunConfig, out_dir: Path) -> _FileOutcome:
    name = src.name
    row = ReportRow(file=name, method=config.method, scale=config.scale)
    try:
        img = load(src)
        spec = ScaleSpec(factor=config.scale, antialias=config.params.antialias)
        trace = None
        if config.method == "said":
            result, trace = said_downscale(img, spec, config.params, want_trace=config.trace)
        else:
            result = baseline_downscale(img, spec, config.method)
        out_path = out_dir / _output_name(src, config.method, config.scale)
        save(result, out_path)
        trace_paths: list[Path] = []
        if trace is not None:
            trace_paths = _dump_trace(trace, result, out_dir, out_path.stem)
        if config.reference_dir is not None:
            ref_path = Path(config.reference_dir) / name
            if not ref_path.is_file():
                return _FileOutcome(row, f"{name}: no reference image at {ref_path}", trace_paths)
            ref = load(ref_path)
            row = replace(row, psnr_db=psnr(result, ref), ssim=ssim(result, ref))
        return _FileOutcome(row, None, trace_paths)
    except (SaidError, OSError) as exc:
        return _FileOutcome(row, f"{name}: {exc}")


def run(config: RunConfig) -> RunResult:
    """Process every input; per-file failures are recorded and the run continues."""
    result = RunResult()
    files, errors = expand_inputs(config.inputs)
    result.errors.extend(errors)
    if not files:
        result.errors.append("no input images to process")
        return result
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if config.jobs == 1:
        outcomes = [_process_one(f, config, out_dir) for f in files]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(lambda f: _process_one(f, config, out_dir), files))

    for outcome in outcomes:  # input order regardless of completion order
        result.rows.append(outcome.row)
        if outcome.error:
            result.errors.append(outcome.error)
        result.figure_paths.extend(outcome.trace_paths)

    result.report_path = write_report(result.rows, out_dir, config.report)
    metrics_fig = render_metrics_figure(result.rows, out_dir / "report_metrics.png")
    if metrics_fig is not None:
        result.figure_paths.append(metrics_fig)
    return result


def main(argv: list[str] | None = None) -> int:
    config = parse_args(argv)
    result = run(config)
    for row in result.rows:
        if row.has_metrics:
            p = "inf" if row.psnr_db == float("inf") else f"{row.psnr_db:.2f}"
            print(f"{row.file}: {row.method} x{row.scale:g}  psnr={p} dB  ssim={row.ssim:.3f}")
        else:
            print(f"{row.file}: {row.method} x{row.scale:g}")
    if result.report_path is not None:
        print(f"report: {result.report_path}")
    for fig in result.figure_paths:
        print(f"figure: {fig}")
    for err in result.errors:
        print(f"error: {err}", file=sys.stderr)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
