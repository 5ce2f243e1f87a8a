"""Spatial-domain filtering: 3x3 convolution, Sobel edge maps, Laplacian
texture maps, and separable Gaussian blur.

Conventions shared by every operation here:

* 3x3 kernels are applied as a correlation-style index sum
  ``out(x, y) = sum_ij p(x+i, y+j) * k(i, j)`` with no kernel flip.
* Out-of-bounds reads use reflect-101 extension (mirror about the border
  pixel, which is not duplicated): ``... c b | a b c ... | y x``.
* Outputs are same-size, float64, and fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from said.core import Plane
from said.errors import ParameterError


@dataclass(frozen=True)
class Kernel3x3:
    """Nine filter taps in row-major order."""

    taps: tuple[float, ...]

    def __post_init__(self) -> None:
        taps = tuple(float(t) for t in self.taps)
        if len(taps) != 9:
            raise ParameterError(f"kernel needs 9 taps, got {len(taps)}")
        if not all(math.isfinite(t) for t in taps):
            raise ParameterError("kernel taps must be finite")
        object.__setattr__(self, "taps", taps)


SOBEL_X = Kernel3x3((-1, 0, 1, -2, 0, 2, -1, 0, 1))
SOBEL_Y = Kernel3x3((-1, -2, -1, 0, 0, 0, 1, 2, 1))
LAPLACIAN = Kernel3x3((0, 1, 0, 1, -4, 1, 0, 1, 0))
IDENTITY = Kernel3x3((0, 0, 0, 0, 1, 0, 0, 0, 0))


@dataclass(frozen=True, eq=False)
class EdgeMap:
    """Normalized gradient-magnitude plane; every sample lies in [0, 1]."""

    plane: Plane

    def __post_init__(self) -> None:
        d = self.plane.data
        if d.min() < 0.0 or d.max() > 1.0:
            raise ParameterError("edge map samples must lie in [0, 1]")


@dataclass(frozen=True, eq=False)
class TextureMap:
    """Signed second-derivative response plane (not normalized, not clamped)."""

    plane: Plane


@dataclass(frozen=True, eq=False)
class GradientPair:
    """Horizontal and vertical gradient planes of a common source."""

    gx: Plane
    gy: Plane

    def __post_init__(self) -> None:
        if (self.gx.width, self.gx.height) != (self.gy.width, self.gy.height):
            raise ParameterError("gradient planes must share dimensions")


def reflect_indices(idx: np.ndarray, n: int) -> np.ndarray:
    """Fold arbitrary integer indices into [0, n) with reflect-101 borders."""
    if n == 1:
        return np.zeros_like(idx)
    period = 2 * (n - 1)
    idx = np.mod(idx, period)
    return np.where(idx >= n, period - idx, idx)


def _pad_reflect(data: np.ndarray, ry: int, rx: int) -> np.ndarray:
    h, w = data.shape
    rows = reflect_indices(np.arange(-ry, h + ry), h)
    cols = reflect_indices(np.arange(-rx, w + rx), w)
    return data[np.ix_(rows, cols)]


def convolve3x3(p: Plane, k: Kernel3x3) -> Plane:
    """Correlate a plane with a 3x3 kernel; same-size output, reflect-101 borders."""
    h, w = p.height, p.width
    padded = _pad_reflect(p.data, 1, 1)
    out = np.zeros((h, w))
    for j in range(3):
        for i in range(3):
            tap = k.taps[j * 3 + i]
            if tap != 0.0:
                out += tap * padded[j : j + h, i : i + w]
    return Plane._from_owned(out)


def sobel_gradients(p: Plane) -> GradientPair:
    """Sobel horizontal/vertical gradients of a plane."""
    return GradientPair(convolve3x3(p, SOBEL_X), convolve3x3(p, SOBEL_Y))


def sobel_magnitude(p: Plane) -> Plane:
    """Unnormalized gradient magnitude sqrt(gx^2 + gy^2)."""
    g = sobel_gradients(p)
    return Plane._from_owned(np.sqrt(g.gx.data * g.gx.data + g.gy.data * g.gy.data))


def sobel_edge_map(p: Plane) -> EdgeMap:
    """Min-max-normalized Sobel magnitude.

    The magnitude plane is rescaled so its minimum maps to 0 and its maximum
    to 1.  A flat input (zero gradient everywhere, hence max == min) returns
    an all-zero map instead of dividing by zero.  Because the magnitude
    scales linearly under ``p -> a*p + b`` (a > 0), the normalized map is
    invariant to affine intensity changes of the input.
    """
    e = sobel_magnitude(p).data
    e_min = e.min()
    e_max = e.max()
    if e_max == e_min:
        return EdgeMap(Plane._from_owned(np.zeros_like(e)))
    return EdgeMap(Plane._from_owned((e - e_min) / (e_max - e_min)))


def laplacian(p: Plane) -> TextureMap:
    """4-neighbor Laplacian response; signed, neither normalized nor clamped."""
    return TextureMap(convolve3x3(p, LAPLACIAN))


def normalize_texture(t: TextureMap) -> TextureMap:
    """Min-max rescale a texture map to [0, 1] (experimental; see SaidParams).

    Constant maps (max == min) are returned as all zeros, preserving the
    invariant that flat inputs produce zero texture.
    """
    d = t.plane.data
    t_min = d.min()
    t_max = d.max()
    if t_max == t_min:
        return TextureMap(Plane._from_owned(np.zeros_like(d)))
    return TextureMap(Plane._from_owned((d - t_min) / (t_max - t_min)))


def gaussian_taps(sigma: float) -> np.ndarray:
    """Sampled 1-D Gaussian taps of radius ceil(3*sigma), renormalized to sum 1."""
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    r = math.ceil(3.0 * sigma)
    t = np.arange(-r, r + 1, dtype=np.float64)
    g = np.exp(-(t * t) / (2.0 * sigma * sigma))
    return g / g.sum()


def _blur_axis(data: np.ndarray, taps: np.ndarray, axis: int) -> np.ndarray:
    r = (len(taps) - 1) // 2
    if axis == 0:
        padded = _pad_reflect(data, r, 0)
        out = np.zeros_like(data)
        for j, w in enumerate(taps):
            out += w * padded[j : j + data.shape[0], :]
    else:
        padded = _pad_reflect(data, 0, r)
        out = np.zeros_like(data)
        for j, w in enumerate(taps):
            out += w * padded[:, j : j + data.shape[1]]
    return out


def gaussian_blur(p: Plane, sigma: float) -> Plane:
    """Separable Gaussian blur with reflect-101 borders; same-size output.

    Taps sum to one, so constants are fixed points and the plane mean is
    preserved up to border effects.
    """
    taps = gaussian_taps(sigma)
    out = _blur_axis(p.data, taps, axis=1)
    out = _blur_axis(out, taps, axis=0)
    return Plane._from_owned(out)
