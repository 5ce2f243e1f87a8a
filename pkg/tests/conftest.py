from __future__ import annotations

import numpy as np
import pytest

from said import Colorspace, Image, Plane


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240831)


def random_plane(rng: np.random.Generator, h: int, w: int) -> Plane:
    return Plane(rng.random((h, w)))


def random_image(rng: np.random.Generator, h: int, w: int, channels: int = 3) -> Image:
    if channels == 1:
        return Image.from_array(rng.random((h, w)))
    return Image.from_array(rng.random((h, w, 3)))


def gray_image(arr: np.ndarray) -> Image:
    return Image((Plane(arr),), Colorspace.GRAY)


def checkerboard(size: int, block: int) -> np.ndarray:
    idx = np.arange(size) // block
    return ((idx[:, None] + idx[None, :]) % 2).astype(np.float64)


def structural_scene(n: int = 96, rgb: bool = False) -> np.ndarray:
    """Deterministic coarse-structure scene: two flat wall tones split down
    the middle, crossed by thick horizontal bands.  All features stay well
    above the output Nyquist at x4, which is the content class where the
    texture-restoration term adds gradient energy instead of smoothing."""
    y, x = np.mgrid[0:n, 0:n].astype(np.float64)
    img = np.where(x < n // 2, 0.7, 0.3).astype(np.float64)
    bands = (y % 20) < 6
    img[bands] = np.where(x < n // 2, 0.35, 0.6)[bands]
    if not rgb:
        return img
    return np.stack(
        [np.clip(img * 1.05, 0, 1), img, np.clip(img * 0.9 + 0.05, 0, 1)], axis=2
    )


def synthetic_photo(h: int, w: int, seed: int = 11) -> np.ndarray:
    """Deterministic natural-looking RGB test content: smooth gradients,
    blobs, hard edges, and fine sinusoidal texture."""
    gen = np.random.default_rng(seed)
    y, x = np.mgrid[0:h, 0:w]
    base = 0.35 + 0.3 * (x / max(w - 1, 1)) + 0.15 * (y / max(h - 1, 1))
    blob = 0.25 * np.exp(-(((x - w / 3) ** 2 + (y - h / 3) ** 2) / (0.02 * h * w)))
    stripes = 0.08 * np.sin(2 * np.pi * x / 5.0) * np.sin(2 * np.pi * y / 7.0)
    rect = ((x > w // 2) & (x < w // 2 + w // 5) & (y > h // 4) & (y < 3 * h // 4)) * 0.3
    noise = 0.02 * gen.standard_normal((h, w))
    lum = np.clip(base + blob + stripes + rect + noise, 0.0, 1.0)
    r = np.clip(lum * 1.05, 0.0, 1.0)
    g = np.clip(lum * 0.95 + 0.02, 0.0, 1.0)
    b = np.clip(lum * 0.9 + 0.05, 0.0, 1.0)
    return np.stack([r, g, b], axis=2)
