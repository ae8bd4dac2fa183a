"""Image I/O and palette quantization.

Images move through the system in two forms: full-color ``RgbImage`` and
``PalettedImage`` (indices into a small color table).  The quantizer turns a
user-supplied PNG into the small-palette target that drives evolution, and
the encoders write the per-generation frames plus the final animation.

Quantization is median-cut: repeatedly split the color box with the widest
channel span at its population median until the requested number of boxes is
reached, then map every pixel to the nearest box mean.  The whole pipeline is
integer arithmetic, so results are identical across platforms and calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import struct

import numpy as np
from PIL import GifImagePlugin, Image, UnidentifiedImageError

MAX_PALETTE = 256


@dataclass(eq=False)
class RgbImage:
    """Full-color image: ``pixels`` is a (height, width, 3) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValueError("pixels must have shape (height, width, 3)")
        if self.pixels.shape[0] < 1 or self.pixels.shape[1] < 1:
            raise ValueError("image must be at least 1x1")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(eq=False)
class PalettedImage:
    """Indexed image: ``indices`` (height, width) uint8 into ``palette`` (K, 3) uint8.

    Index 0 is the base color: the entry every unpainted canvas pixel keeps.
    Palette entries are pairwise distinct.
    """

    indices: np.ndarray
    palette: np.ndarray

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=np.uint8)
        self.palette = np.asarray(self.palette, dtype=np.uint8)
        if self.indices.ndim != 2:
            raise ValueError("indices must have shape (height, width)")
        if self.palette.ndim != 2 or self.palette.shape[1] != 3:
            raise ValueError("palette must have shape (K, 3)")
        k = self.palette.shape[0]
        if not 1 <= k <= MAX_PALETTE:
            raise ValueError(f"palette must hold 1..{MAX_PALETTE} colors, got {k}")
        if len(np.unique(self.palette, axis=0)) != k:
            raise ValueError("palette entries must be pairwise distinct")
        if self.indices.size and int(self.indices.max()) >= k:
            raise ValueError("pixel index out of palette range")

    @property
    def width(self) -> int:
        return self.indices.shape[1]

    @property
    def height(self) -> int:
        return self.indices.shape[0]

    @property
    def n_colors(self) -> int:
        return self.palette.shape[0]

    def to_rgb(self) -> RgbImage:
        return RgbImage(self.palette[self.indices])


def load_image(path) -> RgbImage:
    """Decode a PNG file into an RgbImage.

    Only PNG input is accepted.  An alpha channel, if present, is dropped.
    Raises FileNotFoundError for a missing path and ValueError for anything
    Pillow cannot decode or that is not a PNG.
    """
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such image file: {p}")
    try:
        with Image.open(p) as im:
            if im.format != "PNG":
                raise ValueError(f"{p}: only PNG input is supported (got {im.format})")
            if im.mode != "RGB":
                im = im.convert("RGB")
            pixels = np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ValueError(f"{p}: cannot decode image: {exc}") from exc
    return RgbImage(pixels)


def save_png(img, path) -> None:
    """Write an RgbImage or PalettedImage as a PNG file.

    Paletted images are written in indexed mode so the palette survives a
    round trip.  The parent directory must already exist.
    """
    p = Path(path)
    if isinstance(img, PalettedImage):
        out = Image.fromarray(img.indices, mode="P")
        out.putpalette(img.palette.flatten().tolist())
    elif isinstance(img, RgbImage):
        out = Image.fromarray(img.pixels, mode="RGB")
    else:
        raise TypeError(f"cannot save object of type {type(img).__name__}")
    out.save(p, format="PNG")


def assemble_gif(frames, path, frame_delay: int) -> None:
    """Encode an ordered frame sequence as an animated GIF.

    frame_delay is per frame, in centiseconds (the GIF native unit).  All
    frames must share the same dimensions.  The animation loops forever.

    Frames are written one by one through Pillow's frame encoder rather than
    its animation writer: the latter silently merges consecutive identical
    frames, and converged runs produce plenty of those.  Every frame carries
    its own color table, so palettes may differ between frames.
    """
    if not frames:
        raise ValueError("cannot assemble a GIF from an empty frame list")
    w, h = frames[0].width, frames[0].height
    for i, f in enumerate(frames):
        if f.width != w or f.height != h:
            raise ValueError(
                f"frame {i} is {f.width}x{f.height}, expected {w}x{h}"
            )
    images = []
    for f in frames:
        im = Image.fromarray(f.indices, mode="P")
        im.putpalette(f.palette.flatten().tolist())
        images.append(im)
    with open(Path(path), "wb") as fp:
        header, _ = GifImagePlugin.getheader(images[0])
        for block in header:
            fp.write(block)
        # NETSCAPE application extension: loop count 0 = forever
        fp.write(struct.pack("<BBB11sBBHB", 0x21, 0xFF, 11, b"NETSCAPE2.0", 3, 1, 0, 0))
        for im in images:
            for block in GifImagePlugin.getdata(
                im, duration=frame_delay * 10, include_color_table=True
            ):
                fp.write(block)
        fp.write(b";")


# ----------------------------------------------------------------------
# Median-cut quantization
# ----------------------------------------------------------------------

def _pack(colors: np.ndarray) -> np.ndarray:
    c = colors.astype(np.int64)
    return (c[:, 0] << 16) | (c[:, 1] << 8) | c[:, 2]


def _box_mean(colors: np.ndarray, counts: np.ndarray) -> tuple[int, int, int]:
    # Population mean per channel, rounded half up, in exact integers.
    total = int(counts.sum())
    sums = (colors.astype(np.int64) * counts[:, None]).sum(axis=0)
    return tuple(int((2 * s + total) // (2 * total)) for s in sums)


def _split_box(colors, counts, channel):
    # Total order: split channel first, then full RGB so equal channel
    # values land deterministically.
    order = np.lexsort((colors[:, 2], colors[:, 1], colors[:, 0], colors[:, channel]))
    colors, counts = colors[order], counts[order]
    cum = np.cumsum(counts)
    split = int(np.searchsorted(cum, cum[-1] / 2))
    if split >= len(colors) - 1:
        split = len(colors) - 2  # keep the upper half non-empty
    return (colors[: split + 1], counts[: split + 1]), (colors[split + 1 :], counts[split + 1 :])


def quantize(img: RgbImage, k: int) -> PalettedImage:
    """Reduce an image to at most ``k`` colors with median-cut.

    Boxes stop splitting once every remaining box is a single color, so
    images with fewer than ``k`` distinct colors come back lossless.  After
    mapping, the palette is reordered so that the most frequently assigned
    entry sits at index 0 (the base color); frequency ties keep the lower
    index.  Nearest-entry mapping uses squared RGB distance with ties going
    to the lower palette index.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_PALETTE:
        raise ValueError(f"k must be at most {MAX_PALETTE}")

    flat = img.pixels.reshape(-1, 3)
    packed = _pack(flat)
    uniq_packed, counts = np.unique(packed, return_counts=True)
    uniq = np.stack(
        [(uniq_packed >> 16) & 255, (uniq_packed >> 8) & 255, uniq_packed & 255],
        axis=1,
    ).astype(np.int64)

    boxes = [(uniq, counts)]
    while len(boxes) < k:
        # Widest-spanning box and channel; ties keep the older box and the
        # lower channel index.
        best, best_span, best_chan = -1, 0, 0
        for i, (cols, _) in enumerate(boxes):
            spans = cols.max(axis=0) - cols.min(axis=0)
            chan = int(np.argmax(spans))
            if int(spans[chan]) > best_span:
                best, best_span, best_chan = i, int(spans[chan]), chan
        if best < 0:
            break  # every box is a single color already
        lower, upper = _split_box(*boxes[best], best_chan)
        boxes[best] = lower
        boxes.append(upper)

    means = []
    seen = set()
    for cols, cnts in boxes:
        m = _box_mean(cols, cnts)
        if m not in seen:  # distinct boxes can share a rounded mean
            seen.add(m)
            means.append(m)
    palette = np.array(means, dtype=np.int64)

    # Map each distinct source color to its nearest palette entry.
    d2 = ((uniq[:, None, :] - palette[None, :, :]) ** 2).sum(axis=2)
    assign = d2.argmin(axis=1)  # argmin takes the lowest index on ties
    idx = assign[np.searchsorted(uniq_packed, packed)]

    # Most frequent entry becomes the base color at index 0.
    freq = np.bincount(idx, minlength=len(palette))
    base = int(freq.argmax())
    if base != 0:
        palette[[0, base]] = palette[[base, 0]]
        remap = np.arange(len(palette))
        remap[0], remap[base] = base, 0
        idx = remap[idx]

    return PalettedImage(
        idx.reshape(img.height, img.width).astype(np.uint8),
        palette.astype(np.uint8),
    )
