"""Image containers and value-range utilities shared by the whole package.

Pixel data lives in float64 arrays with intensities normalized to the unit
range [0, 1]; 8-bit files map via v/255 on decode and round-half-up on encode
(see :mod:`said.io`).  Containers are immutable: every operation returns a new
object and never mutates its inputs, so all of them are safe to share between
worker threads and results do not depend on the degree of parallelism.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from said.errors import ParameterError

# BT.601 luma weights for R, G, B.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class Colorspace(Enum):
    GRAY = "gray"
    RGB = "rgb"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Plane:
    """A single-channel 2-D grid of real-valued samples.

    ``data`` has shape ``(height, width)`` and is stored read-only.  Samples
    must be finite; intermediate pipeline planes may carry values outside
    [0, 1] (sharpening overshoot, signed texture responses), so no range
    constraint is imposed here.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.float64, order="C", copy=True)
        self._validate(arr)
        object.__setattr__(self, "data", _freeze(arr))

    @staticmethod
    def _validate(arr: np.ndarray) -> None:
        if arr.ndim != 2:
            raise ParameterError(f"plane data must be 2-D, got {arr.ndim}-D")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError(f"plane must be at least 1x1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("plane samples must be finite (no NaN/Inf)")

    @classmethod
    def _from_owned(cls, arr: np.ndarray) -> Plane:
        """Wrap a freshly computed float64 array without copying it."""
        arr = np.ascontiguousarray(arr, dtype=np.float64)
        cls._validate(arr)
        self = object.__new__(cls)
        object.__setattr__(self, "data", _freeze(arr))
        return self

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> Plane:
        return cls._from_owned(np.full((height, width), float(value)))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def to_array(self) -> np.ndarray:
        """Writable copy of the samples, shape (height, width)."""
        return self.data.copy()


@dataclass(frozen=True, eq=False)
class Image:
    """A multi-channel raster: 1 plane (gray) or 3 planes (RGB) of equal size."""

    channels: tuple[Plane, ...]
    colorspace: Colorspace

    def __post_init__(self) -> None:
        channels = tuple(self.channels)
        object.__setattr__(self, "channels", channels)
        n = len(channels)
        if n not in (1, 3):
            raise ParameterError(f"image must have 1 or 3 channels, got {n}")
        expected = Colorspace.GRAY if n == 1 else Colorspace.RGB
        if self.colorspace is not expected:
            raise ParameterError(
                f"{n}-channel image cannot be tagged {self.colorspace.value}"
            )
        w, h = channels[0].width, channels[0].height
        for ch in channels[1:]:
            if ch.width != w or ch.height != h:
                raise ParameterError("all channel planes must share dimensions")

    @classmethod
    def from_planes(cls, planes: tuple[Plane, ...] | list[Plane]) -> Image:
        planes = tuple(planes)
        space = Colorspace.GRAY if len(planes) == 1 else Colorspace.RGB
        return cls(planes, space)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> Image:
        """Build from an (h, w) gray or (h, w, 3) RGB array."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim == 2:
            return cls((Plane(arr),), Colorspace.GRAY)
        if arr.ndim == 3 and arr.shape[2] == 3:
            return cls(tuple(Plane(arr[:, :, c]) for c in range(3)), Colorspace.RGB)
        raise ParameterError(f"expected (h, w) or (h, w, 3) array, got shape {arr.shape}")

    @property
    def width(self) -> int:
        return self.channels[0].width

    @property
    def height(self) -> int:
        return self.channels[0].height

    def to_array(self) -> np.ndarray:
        """Writable (h, w) array for gray, (h, w, 3) for RGB."""
        if len(self.channels) == 1:
            return self.channels[0].to_array()
        return np.stack([ch.data for ch in self.channels], axis=2)

    def map_planes(self, fn) -> Image:
        """Apply a Plane -> Plane function to every channel."""
        return Image(tuple(fn(ch) for ch in self.channels), self.colorspace)


@dataclass(frozen=True)
class ValueRange:
    """Closed interval that stored intensities are expected to occupy."""

    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ParameterError(f"invalid range [{self.lo}, {self.hi}]")

    def contains(self, arr: np.ndarray) -> bool:
        return bool(np.all(arr >= self.lo) and np.all(arr <= self.hi))


UNIT_RANGE = ValueRange(0.0, 1.0)


def to_luma(img: Image) -> Plane:
    """Luma plane of an image.

    Gray images return their sole plane unchanged; RGB images combine
    channels with the BT.601 weights 0.299/0.587/0.114, which sum to one,
    so (v, v, v) maps to v and values stay inside the channel hull.
    """
    if img.colorspace is Colorspace.GRAY:
        return img.channels[0]
    r, g, b = (ch.data for ch in img.channels)
    wr, wg, wb = LUMA_WEIGHTS
    return Plane._from_owned(wr * r + wg * g + wb * b)


def clamp_unit(p: Plane) -> Plane:
    """Clamp every sample to [0, 1]; dimensions unchanged."""
    return Plane._from_owned(np.clip(p.data, 0.0, 1.0))


def clamp_unit_image(img: Image) -> Image:
    """Per-channel :func:`clamp_unit`."""
    return img.map_planes(clamp_unit)
