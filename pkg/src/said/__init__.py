"""Structure-aware image downscaling (SAID).

Edge-map-guided bicubic interpolation fused with Laplacian texture
restoration, alongside plain bicubic/Lanczos baselines and PSNR/SSIM
metrics for side-by-side evaluation.
"""

from said.core import (
    Colorspace,
    Image,
    Plane,
    UNIT_RANGE,
    ValueRange,
    clamp_unit,
    clamp_unit_image,
    to_luma,
)
from said.errors import (
    DimensionMismatchError,
    ImageIOError,
    MalformedImageError,
    ParameterError,
    SaidError,
    UnsupportedImageError,
)
from said.filters import (
    EdgeMap,
    GradientPair,
    IDENTITY,
    Kernel3x3,
    LAPLACIAN,
    SOBEL_X,
    SOBEL_Y,
    TextureMap,
    convolve3x3,
    gaussian_blur,
    laplacian,
    sobel_edge_map,
    sobel_gradients,
    sobel_magnitude,
)
from said.io import load, save
from said.metrics import MetricReport, compare, psnr, ssim
from said.pipeline import (
    SaidParams,
    SaidTrace,
    baseline_downscale,
    edge_guided_blend,
    said_downscale,
    texture_fuse,
    unsharp_mask,
)
from said.resample import (
    BicubicKernelParam,
    ScaleSpec,
    keys_kernel,
    lanczos_kernel,
    resize_bicubic,
    resize_lanczos,
)

__version__ = "0.1.0"

__all__ = [
    "BicubicKernelParam",
    "Colorspace",
    "DimensionMismatchError",
    "EdgeMap",
    "GradientPair",
    "IDENTITY",
    "Image",
    "ImageIOError",
    "Kernel3x3",
    "LAPLACIAN",
    "MalformedImageError",
    "MetricReport",
    "ParameterError",
    "Plane",
    "SOBEL_X",
    "SOBEL_Y",
    "SaidError",
    "SaidParams",
    "SaidTrace",
    "ScaleSpec",
    "TextureMap",
    "UNIT_RANGE",
    "UnsupportedImageError",
    "ValueRange",
    "baseline_downscale",
    "clamp_unit",
    "clamp_unit_image",
    "compare",
    "convolve3x3",
    "edge_guided_blend",
    "gaussian_blur",
    "keys_kernel",
    "lanczos_kernel",
    "laplacian",
    "load",
    "psnr",
    "resize_bicubic",
    "resize_lanczos",
    "said_downscale",
    "save",
    "sobel_edge_map",
    "sobel_gradients",
    "sobel_magnitude",
    "ssim",
    "texture_fuse",
    "to_luma",
    "unsharp_mask",
    "__version__",
]
