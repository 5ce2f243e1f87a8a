"""Full-reference quality metrics: PSNR and single-scale SSIM.

Both operate on the package's unit-range convention (MAX = 1.0).  SSIM uses
the reference constants: an 11x11 Gaussian window with sigma 1.5,
C1 = (0.01)^2, C2 = (0.03)^2, computed on luma over valid window positions
only (no padding), so reported values carry no border-policy ambiguity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from said.core import Image, to_luma
from said.errors import DimensionMismatchError, ParameterError

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01**2
SSIM_C2 = 0.03**2


@dataclass(frozen=True)
class MetricReport:
    """PSNR in dB (+inf for identical inputs) and SSIM in [-1, 1]."""

    psnr_db: float
    ssim: float


def _require_comparable(a: Image, b: Image) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"images are {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    if len(a.channels) != len(b.channels):
        raise DimensionMismatchError(
            f"channel counts differ: {len(a.channels)} vs {len(b.channels)}"
        )


def psnr(a: Image, b: Image) -> float:
    """Peak signal-to-noise ratio in dB; exactly +inf when the images match."""
    _require_comparable(a, b)
    sq_sum = 0.0
    count = 0
    for ca, cb in zip(a.channels, b.channels):
        diff = ca.data - cb.data
        sq_sum += float(np.sum(diff * diff))
        count += diff.size
    mse = sq_sum / count
    if mse == 0.0:
        return math.inf
    return -10.0 * math.log10(mse)


def _ssim_window() -> np.ndarray:
    r = SSIM_WINDOW // 2
    t = np.arange(-r, r + 1, dtype=np.float64)
    g = np.exp(-(t * t) / (2.0 * SSIM_SIGMA * SSIM_SIGMA))
    return g / g.sum()


def _filter_valid(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Separable valid-mode correlation with a symmetric 1-D window."""
    k = len(taps)
    out = np.zeros((x.shape[0] - k + 1, x.shape[1]))
    for j, w in enumerate(taps):
        out += w * x[j : j + out.shape[0], :]
    out2 = np.zeros((out.shape[0], out.shape[1] - k + 1))
    for j, w in enumerate(taps):
        out2 += w * out[:, j : j + out2.shape[1]]
    return out2


def ssim(a: Image, b: Image) -> float:
    """Mean single-scale SSIM over all valid 11x11 windows of the luma planes."""
    _require_comparable(a, b)
    if min(a.width, a.height) < SSIM_WINDOW:
        raise ParameterError(
            f"image {a.width}x{a.height} is smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} window"
        )
    x = to_luma(a).data
    y = to_luma(b).data
    taps = _ssim_window()
    mu_x = _filter_valid(x, taps)
    mu_y = _filter_valid(y, taps)
    var_x = _filter_valid(x * x, taps) - mu_x * mu_x
    var_y = _filter_valid(y * y, taps) - mu_y * mu_y
    cov = _filter_valid(x * y, taps) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + SSIM_C1) * (2.0 * cov + SSIM_C2)
    den = (mu_x * mu_x + mu_y * mu_y + SSIM_C1) * (var_x + var_y + SSIM_C2)
    return float(np.mean(num / den))


def compare(a: Image, b: Image) -> MetricReport:
    """Both metrics in one report."""
    return MetricReport(psnr_db=psnr(a, b), ssim=ssim(a, b))
