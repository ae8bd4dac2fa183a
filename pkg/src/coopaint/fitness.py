"""Mean-absolute-error scoring of a rendered image against the target.

The default domain resolves both images through their palettes and averages
the per-channel 8-bit RGB differences, so palette entries that merely look
similar score better than wildly different ones.  The alternative "index"
domain compares raw palette indices instead; it exists because either
reading of "error between the pixels" is defensible, and the choice is a
single switch.

Differences are accumulated as exact integers and divided once at the end:
no float summation order to worry about.
"""

from __future__ import annotations

import numpy as np

from .imaging import PalettedImage

DOMAINS = ("rgb", "index")


def channel_diff_table(palette_a: np.ndarray, palette_b: np.ndarray) -> np.ndarray:
    """(K_a, K_b) int64 table of summed per-channel |a - b| for two palettes."""
    pa = np.asarray(palette_a, dtype=np.int64)
    pb = np.asarray(palette_b, dtype=np.int64)
    return np.abs(pa[:, None, :] - pb[None, :, :]).sum(axis=2)


def table_mae(idx_a: np.ndarray, idx_b: np.ndarray, table: np.ndarray, denom: int) -> float:
    """Gather per-pixel channel differences through ``table`` and average."""
    return int(table[idx_a.ravel(), idx_b.ravel()].sum(dtype=np.int64)) / denom


def mae(rendered: PalettedImage, target: PalettedImage, domain: str = "rgb") -> float:
    """Mean absolute error between two paletted images of equal size.

    domain "rgb": mean over all pixels and all 3 channels of the absolute
    difference between palette-resolved 8-bit values; 0.0 iff the images are
    RGB-identical. domain "index": mean absolute difference of the raw
    palette indices.
    """
    if rendered.width != target.width or rendered.height != target.height:
        raise ValueError(
            f"image sizes differ: {rendered.width}x{rendered.height}"
            f" vs {target.width}x{target.height}"
        )
    n_pixels = rendered.width * rendered.height
    if domain == "rgb":
        table = channel_diff_table(rendered.palette, target.palette)
        return table_mae(rendered.indices, target.indices, table, 3 * n_pixels)
    if domain == "index":
        a = rendered.indices.astype(np.int64)
        b = target.indices.astype(np.int64)
        return int(np.abs(a - b).sum()) / n_pixels
    raise ValueError(f"unknown fitness domain {domain!r}, expected one of {DOMAINS}")
