"""Exception types raised by the said package."""

from __future__ import annotations


class SaidError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SaidError, ValueError):
    """An argument is outside its documented domain (sigma <= 0, scale <= 1, ...)."""


class DimensionMismatchError(SaidError, ValueError):
    """Operands that must share dimensions or channel counts do not."""


class ImageIOError(SaidError):
    """Base class for image decode/encode failures."""


class UnsupportedImageError(ImageIOError):
    """The file is recognised but uses an unsupported format, bit depth, or channel layout."""


class MalformedImageError(ImageIOError):
    """The file's header or payload is corrupt or truncated."""
