"""Image decode/encode between files and the in-memory Image type.

Supported formats: binary PPM (P6) and PGM (P5) with maxval 255, parsed and
written natively so golden tests carry no codec dependency, and 8-bit
gray/RGB PNG through Pillow.  Decoded samples map via v/255; encoding
quantizes with round-half-up (byte = floor(v*255 + 0.5)), which makes
save -> load -> save byte-stable for PNM files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from said.core import Colorspace, Image, UNIT_RANGE
from said.errors import MalformedImageError, ParameterError, UnsupportedImageError

PNM_MAXVAL = 255


def _parse_pnm_header(blob: bytes) -> tuple[bytes, int, int, int, int]:
    """Return (magic, width, height, maxval, payload_offset)."""
    magic = blob[:2]
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        # skip whitespace and '#' comment lines between header fields
        while pos < len(blob) and blob[pos : pos + 1].isspace():
            pos += 1
        if pos < len(blob) and blob[pos : pos + 1] == b"#":
            nl = blob.find(b"\n", pos)
            if nl == -1:
                raise MalformedImageError("unterminated comment in PNM header")
            pos = nl + 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos : pos + 1].isspace():
            pos += 1
        token = blob[start:pos]
        if not token.isdigit():
            raise MalformedImageError(f"bad PNM header token {token!r}")
        fields.append(int(token))
    if pos >= len(blob) or not blob[pos : pos + 1].isspace():
        raise MalformedImageError("PNM header not terminated by whitespace")
    pos += 1  # exactly one whitespace byte before the payload
    width, height, maxval = fields
    return magic, width, height, maxval, pos


def _load_pnm(blob: bytes, path: Path) -> Image:
    magic, width, height, maxval, offset = _parse_pnm_header(blob)
    if width < 1 or height < 1:
        raise MalformedImageError(f"{path}: degenerate dimensions {width}x{height}")
    if maxval != PNM_MAXVAL:
        raise UnsupportedImageError(f"{path}: maxval {maxval} (only {PNM_MAXVAL} supported)")
    channels = 3 if magic == b"P6" else 1
    expected = width * height * channels
    payload = blob[offset : offset + expected]
    if len(payload) < expected:
        raise MalformedImageError(
            f"{path}: payload truncated ({len(payload)} of {expected} bytes)"
        )
    arr = np.frombuffer(payload, dtype=np.uint8).astype(np.float64) / PNM_MAXVAL
    if channels == 1:
        return Image.from_array(arr.reshape(height, width))
    return Image.from_array(arr.reshape(height, width, 3))


def _load_png(path: Path) -> Image:
    try:
        with PILImage.open(path) as pil:
            pil.load()
            mode = pil.mode
            if mode == "P":
                if "transparency" in pil.info:
                    raise UnsupportedImageError(f"{path}: alpha channels are not supported")
                pil = pil.convert("RGB")
                mode = "RGB"
            if mode in ("RGBA", "LA", "PA"):
                raise UnsupportedImageError(f"{path}: alpha channels are not supported")
            if mode not in ("L", "RGB"):
                raise UnsupportedImageError(f"{path}: unsupported PNG mode {mode!r}")
            arr = np.asarray(pil, dtype=np.float64) / 255.0
    except UnidentifiedImageError as exc:
        raise MalformedImageError(f"{path}: not a decodable PNG") from exc
    return Image.from_array(arr)


def load(path) -> Image:
    """Decode a PNG/PPM/PGM file into a unit-range Image.

    The format is sniffed from the file's magic bytes, not its extension.
    Raises FileNotFoundError for missing files, UnsupportedImageError for
    recognized-but-unsupported content, MalformedImageError for corrupt data.
    """
    path = Path(path)
    blob = path.read_bytes()
    if blob[:2] in (b"P5", b"P6"):
        return _load_pnm(blob, path)
    if blob[:8] == b"\x89PNG\r\n\x1a\n":
        return _load_png(path)
    raise UnsupportedImageError(f"{path}: unrecognized format (want PNG, P5, or P6)")


def _quantize(img: Image) -> np.ndarray:
    """Unit-range samples to uint8 via round-half-up; (h, w) or (h, w, 3)."""
    arr = img.to_array()
    if not UNIT_RANGE.contains(arr):
        raise ParameterError(
            f"samples outside [0, 1] reached save (min {arr.min()}, max {arr.max()}); clamp first"
        )
    return np.floor(arr * PNM_MAXVAL + 0.5).astype(np.uint8)


def save(img: Image, path, format: str | None = None) -> None:
    """Encode an Image to PNG/PPM/PGM.

    The format comes from the extension unless given explicitly ('png',
    'ppm', 'pgm').  PNM containers are strict: .pgm holds gray, .ppm holds
    RGB.  All samples must already be inside [0, 1].
    """
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".")).lower()
    data = _quantize(img)
    if fmt == "png":
        PILImage.fromarray(data, mode="L" if data.ndim == 2 else "RGB").save(path, "PNG")
        return
    if fmt == "pgm":
        if img.colorspace is not Colorspace.GRAY:
            raise ParameterError("PGM stores grayscale; convert or use .ppm")
        header = f"P5\n{img.width} {img.height}\n{PNM_MAXVAL}\n".encode()
        path.write_bytes(header + data.tobytes())
        return
    if fmt == "ppm":
        if img.colorspace is not Colorspace.RGB:
            raise ParameterError("PPM stores RGB; use .pgm for grayscale")
        header = f"P6\n{img.width} {img.height}\n{PNM_MAXVAL}\n".encode()
        path.write_bytes(header + data.tobytes())
        return
    raise ParameterError(f"unsupported save format {fmt!r} (png, ppm, pgm)")
