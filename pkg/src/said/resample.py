"""Geometric resampling at arbitrary real scale factors.

Bicubic (Keys kernel) and Lanczos (windowed sinc) resizing with a
center-aligned coordinate mapping: destination pixel X samples the source at
``x = (X + 0.5) * (in/out) - 0.5``.  Both kernels are separable, so an image
is resized with one horizontal and one vertical pass over precomputed tap
tables.  Out-of-range taps read the source through reflect-101 extension.

With ``antialias`` enabled the kernel is stretched by the per-axis scale
factor (support 2 becomes 2*s source pixels) and each output pixel's weights
are renormalized to sum to one; this prefilters away the aliasing that plain
kernels produce at large downscale factors.  Plain mode is the default.

Implementation notes on exactness:

* Tap phases are derived with integer arithmetic only (the mapping above has
  rational coordinates when written over the denominator ``2*out``), so tap
  windows never suffer float floor jitter.
* The tap table's second half is constructed as the exact mirror of its
  first half, and weighted sums accumulate symmetric tap pairs together.
  Resampling a flipped image therefore equals flipping the resampled image
  bit-for-bit, on either axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from said.core import Image, Plane
from said.errors import ParameterError
from said.filters import reflect_indices


@dataclass(frozen=True)
class ScaleSpec:
    """Target geometry: a downscale divisor > 1 or explicit output dimensions."""

    factor: float | None = None
    size: tuple[int, int] | None = None  # (out_w, out_h)
    antialias: bool = False

    def __post_init__(self) -> None:
        if (self.factor is None) == (self.size is None):
            raise ParameterError("specify exactly one of factor or size")
        if self.factor is not None:
            f = float(self.factor)
            if not math.isfinite(f) or f <= 1.0:
                raise ParameterError(f"scale factor must exceed 1, got {self.factor}")
            object.__setattr__(self, "factor", f)
        else:
            w, h = self.size
            if int(w) < 1 or int(h) < 1:
                raise ParameterError(f"output size must be positive, got {self.size}")
            object.__setattr__(self, "size", (int(w), int(h)))

    def output_size(self, in_w: int, in_h: int) -> tuple[int, int]:
        """Output (width, height) for a given input; round-half-up on factors."""
        if self.size is not None:
            return self.size
        out_w = math.floor(in_w / self.factor + 0.5)
        out_h = math.floor(in_h / self.factor + 0.5)
        if out_w < 1 or out_h < 1:
            raise ParameterError(
                f"factor {self.factor} maps {in_w}x{in_h} to an empty image"
            )
        return out_w, out_h


@dataclass(frozen=True)
class BicubicKernelParam:
    """Free parameter of the Keys cubic; -0.5 is the Catmull-Rom standard."""

    a: float = -0.5

    def __post_init__(self) -> None:
        if not math.isfinite(self.a):
            raise ParameterError("kernel parameter must be finite")


def keys_kernel(t, a: float = -0.5) -> np.ndarray:
    """Keys piecewise-cubic kernel; 1 at 0, 0 at every other integer, 0 beyond |t| >= 2."""
    at = np.abs(np.asarray(t, dtype=np.float64))
    near = ((a + 2.0) * at - (a + 3.0)) * at * at + 1.0
    far = a * (((at - 5.0) * at + 8.0) * at - 4.0)
    return np.where(at <= 1.0, near, np.where(at < 2.0, far, 0.0))


def lanczos_kernel(t, lobes: int = 3) -> np.ndarray:
    """Windowed sinc kernel sinc(t)*sinc(t/lobes) on |t| < lobes."""
    at = np.abs(np.asarray(t, dtype=np.float64))
    return np.where(at < lobes, np.sinc(at) * np.sinc(at / lobes), 0.0)


def _sym_row_sum(w: np.ndarray) -> np.ndarray:
    # Sum over taps, accumulating mirror pairs together so reversed rows
    # produce bit-identical sums.
    k = w.shape[1]
    acc = np.zeros(w.shape[0])
    for j in range(k // 2):
        acc += w[:, j] + w[:, k - 1 - j]
    if k % 2:
        acc += w[:, k // 2]
    return acc


def _tap_table(
    n_in: int,
    n_out: int,
    kernel,
    support: int,
    antialias: bool,
    renormalize: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Source indices and weights, shape (n_out, k), for one axis.

    Row X holds the taps of output pixel X: contiguous source indices
    (already reflect-folded) and their kernel weights.  Rows X and
    n_out-1-X are exact mirrors by construction.
    """
    if antialias and n_in > n_out:
        f_num, f_den = n_in, n_out  # kernel stretched by the scale factor
    else:
        f_num, f_den = 1, 1
    # taps spanning the stretched support: ceil(2*support*f) + 1
    k = int(-((-2 * support * f_num) // f_den)) + 1
    if n_out % 2 == 1 and (n_in - k) % 2 == 1:
        k += 1  # middle row must admit a self-mirrored window
    x = np.arange(n_out, dtype=np.int64)
    num = (2 * x + 1) * n_in - n_out  # center = num / (2*n_out), exact
    # start = floor(center - support*f) + 1, in exact integer arithmetic
    start = (num * f_den - 2 * n_out * support * f_num) // (2 * n_out * f_den) + 1
    if n_out % 2 == 1:
        start[n_out // 2] = (n_in - k) // 2  # symmetric window about (n_in-1)/2
    j = np.arange(k, dtype=np.int64)
    raw = start[:, None] + j[None, :]
    # kernel argument = (tap - center)/f, via a single exact-integer division
    t_num = (2 * n_out * raw - num[:, None]) * f_den
    t = t_num / float(2 * n_out * f_num)
    w = kernel(t)
    if renormalize:
        w = w / _sym_row_sum(w)[:, None]
    half = n_out // 2
    if half:
        raw[n_out - half :] = (n_in - 1) - raw[:half][::-1, ::-1]
        w[n_out - half :] = w[:half][::-1, ::-1]
    return reflect_indices(raw, n_in), w


def _weighted_gather(data: np.ndarray, idx: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Resample the last axis of (rows, n_in) data through a tap table."""
    n_out, k = idx.shape
    acc = np.zeros((data.shape[0], n_out))
    for j in range(k // 2):
        jm = k - 1 - j
        acc += data[:, idx[:, j]] * w[:, j] + data[:, idx[:, jm]] * w[:, jm]
    if k % 2:
        jc = k // 2
        acc += data[:, idx[:, jc]] * w[:, jc]
    return acc


def _resize_plane(
    p: Plane,
    out_w: int,
    out_h: int,
    kernel,
    support: int,
    antialias: bool,
    renormalize: bool,
) -> Plane:
    idx_x, w_x = _tap_table(p.width, out_w, kernel, support, antialias, renormalize)
    tmp = _weighted_gather(p.data, idx_x, w_x)  # (in_h, out_w)
    idx_y, w_y = _tap_table(p.height, out_h, kernel, support, antialias, renormalize)
    out = _weighted_gather(np.ascontiguousarray(tmp.T), idx_y, w_y).T
    return Plane._from_owned(out)


def _resize(image, spec: ScaleSpec, kernel, support: int, renormalize: bool):
    if isinstance(image, Plane):
        out_w, out_h = spec.output_size(image.width, image.height)
        return _resize_plane(
            image, out_w, out_h, kernel, support, spec.antialias, renormalize
        )
    if isinstance(image, Image):
        out_w, out_h = spec.output_size(image.width, image.height)
        planes = tuple(
            _resize_plane(ch, out_w, out_h, kernel, support, spec.antialias, renormalize)
            for ch in image.channels
        )
        return Image(planes, image.colorspace)
    raise ParameterError(f"cannot resize {type(image).__name__}")


def resize_bicubic(image, spec: ScaleSpec, *, a: float = -0.5):
    """Bicubic (Keys) resampling of a Plane or Image.

    Plain mode evaluates the 4x4 Keys neighborhood whose weights already sum
    to one; antialias mode stretches the kernel by the scale factor and
    renormalizes.  Output is not clamped: plain bicubic overshoots near hard
    edges by design.
    """
    BicubicKernelParam(a)  # validate
    return _resize(image, spec, lambda t: keys_kernel(t, a), 2, spec.antialias)


def resize_lanczos(image, spec: ScaleSpec, *, lobes: int = 3):
    """Lanczos resampling of a Plane or Image; weights renormalized per pixel."""
    if int(lobes) != lobes or lobes < 1:
        raise ParameterError(f"lobes must be a positive integer, got {lobes}")
    lobes = int(lobes)
    return _resize(image, spec, lambda t: lanczos_kernel(t, lobes), lobes, True)
