"""Report rendering for batch runs: delimited tables and companion figures.

Per-file metric rows are written as CSV (columns
``file,method,scale,psnr_db,ssim``) or as a Markdown pair: a summary table in
``Method | PSNR / SSIM`` layout plus a per-file detail table.  Whenever
metrics are present, a bar-chart figure of the per-file PSNR/SSIM values is
rendered next to the delimited output; traced pipeline runs additionally get
a stage montage per image.  Rendering is deterministic: rerunning a report
over the same rows produces byte-identical delimited files.
"""

from __future__ import annotations

import csv
import io as stringio
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from said.core import Image
from said.pipeline import SaidTrace


@dataclass(frozen=True)
class ReportRow:
    """One processed input: metrics are None when no reference was used."""

    file: str
    method: str
    scale: float
    psnr_db: float | None = None
    ssim: float | None = None

    @property
    def has_metrics(self) -> bool:
        return self.psnr_db is not None and self.ssim is not None


def mean_metrics(rows: list[ReportRow]) -> tuple[float, float] | None:
    """Arithmetic mean of (psnr, ssim) over rows that carry metrics."""
    scored = [r for r in rows if r.has_metrics]
    if not scored:
        return None
    psnr = sum(r.psnr_db for r in scored) / len(scored)
    ssim = sum(r.ssim for r in scored) / len(scored)
    return psnr, ssim


def _fmt_psnr(value: float | None, decimals: int) -> str:
    if value is None:
        return ""
    if math.isinf(value):
        return "inf"
    return f"{value:.{decimals}f}"


def _fmt_ssim(value: float | None, decimals: int) -> str:
    if value is None:
        return ""
    return f"{value:.{decimals}f}"


def render_csv(rows: list[ReportRow]) -> str:
    """Per-file rows at full working precision plus a 2-decimal mean row."""
    buf = stringio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["file", "method", "scale", "psnr_db", "ssim"])
    for r in rows:
        writer.writerow(
            [r.file, r.method, f"{r.scale:g}", _fmt_psnr(r.psnr_db, 4), _fmt_ssim(r.ssim, 6)]
        )
    mean = mean_metrics(rows)
    if mean is not None:
        method = rows[0].method if rows else ""
        scale = f"{rows[0].scale:g}" if rows else ""
        writer.writerow(["mean", method, scale, _fmt_psnr(mean[0], 2), _fmt_ssim(mean[1], 3)])
    return buf.getvalue()


def render_markdown(rows: list[ReportRow]) -> str:
    """Summary table in ``Method | PSNR / SSIM`` layout plus per-file detail."""
    lines: list[str] = []
    mean = mean_metrics(rows)
    lines.append("| Method | PSNR / SSIM |")
    lines.append("| --- | --- |")
    method = rows[0].method if rows else "-"
    if mean is not None:
        cell = f"{_fmt_psnr(mean[0], 2)} / {_fmt_ssim(mean[1], 3)}"
    else:
        cell = "- / -"
    lines.append(f"| {method} | {cell} |")
    lines.append("")
    lines.append("| File | Scale | PSNR (dB) | SSIM |")
    lines.append("| --- | --- | --- | --- |")
    for r in rows:
        lines.append(
            f"| {r.file} | {r.scale:g} | {_fmt_psnr(r.psnr_db, 2) or '-'} "
            f"| {_fmt_ssim(r.ssim, 3) or '-'} |"
        )
    lines.append("")
    return "\n".join(lines)


def write_report(rows: list[ReportRow], out_dir, kind: str) -> Path:
    """Write report.csv or report.md into out_dir and return its path."""
    out_dir = Path(out_dir)
    if kind == "csv":
        path = out_dir / "report.csv"
        path.write_text(render_csv(rows))
    elif kind == "markdown":
        path = out_dir / "report.md"
        path.write_text(render_markdown(rows))
    else:
        raise ValueError(f"unknown report kind {kind!r}")
    return path


def render_metrics_figure(rows: list[ReportRow], path) -> Path | None:
    """Bar chart of per-file PSNR and SSIM; skipped when no row has metrics."""
    scored = [r for r in rows if r.has_metrics]
    if not scored:
        return None
    labels = [r.file for r in scored]
    psnr_vals = [r.psnr_db for r in scored]
    finite = [v for v in psnr_vals if math.isfinite(v)]
    top = max(finite) * 1.15 if finite else 1.0
    bars = [v if math.isfinite(v) else top for v in psnr_vals]
    ssim_vals = [r.ssim for r in scored]
    x = np.arange(len(scored))

    fig, (ax_p, ax_s) = plt.subplots(2, 1, figsize=(max(6.0, 1.2 * len(scored)), 6.0))
    ax_p.bar(x, bars, color="#4878d0")
    for xi, v in zip(x, psnr_vals):
        label = "inf" if math.isinf(v) else f"{v:.2f}"
        ax_p.text(xi, bars[int(xi)], label, ha="center", va="bottom", fontsize=8)
    ax_p.set_ylabel("PSNR (dB)")
    ax_p.set_xticks(x)
    ax_p.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax_p.set_title(f"{scored[0].method} @ x{scored[0].scale:g}")

    ax_s.bar(x, ssim_vals, color="#6acc64")
    ax_s.set_ylabel("SSIM")
    ax_s.set_ylim(0.0, 1.05)
    ax_s.set_xticks(x)
    ax_s.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)

    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return Path(path)


def _gray(ax, data: np.ndarray, title: str) -> None:
    ax.imshow(data, cmap="gray", vmin=0.0, vmax=1.0, interpolation="nearest")
    ax.set_title(title, fontsize=9)
    ax.axis("off")


def _show_image(ax, img: Image, title: str) -> None:
    arr = np.clip(img.to_array(), 0.0, 1.0)
    if arr.ndim == 2:
        _gray(ax, arr, title)
    else:
        ax.imshow(arr, interpolation="nearest")
        ax.set_title(title, fontsize=9)
        ax.axis("off")


def render_trace_figure(trace: SaidTrace, result: Image, path) -> Path:
    """2x3 montage of the pipeline stages for one image."""
    fig, axes = plt.subplots(2, 3, figsize=(10.5, 7.0))
    _gray(axes[0][0], trace.edge_map.plane.data, "edge map")
    _gray(axes[0][1], trace.blurred.data, "blurred (luma)")
    _show_image(axes[0][2], trace.sharpened, "sharpened")
    _show_image(axes[1][0], trace.bicubic, "bicubic")
    t = trace.texture.plane.data
    span = max(abs(float(t.min())), abs(float(t.max())), 1e-12)
    axes[1][1].imshow(t, cmap="coolwarm", vmin=-span, vmax=span, interpolation="nearest")
    axes[1][1].set_title("texture (signed)", fontsize=9)
    axes[1][1].axis("off")
    _show_image(axes[1][2], result, "output")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return Path(path)
