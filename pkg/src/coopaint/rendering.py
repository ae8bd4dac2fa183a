"""Rasterize a (position, attribute) genome pair into an indexed image.

Shared rules for all three setups:

* the canvas starts out filled with base color 0;
* shapes paint opaquely in genome order, so on contested pixels the shape
  at the later genome position wins;
* everything is integer arithmetic, so output is bit-identical across
  platforms and repeat calls.

Geometry conventions, pinned here because they decide individual pixels:

* chunk runs that would pass the last pixel of the flattened canvas are cut
  off there, never wrapped;
* a polygon paints a pixel iff the pixel center (x+0.5, y+0.5) is inside
  under the even-odd rule.  Edges span scanlines half-open, [min(y),
  max(y)), and a crossing is counted only when it lies strictly left of the
  center.  Coordinates are doubled internally so centers are integers and
  crossing comparisons stay exact;
* a circle of radius r paints the closed integer disk dx*dx + dy*dy <= r*r,
  clipped to the canvas.

The kernels are numba-compiled: a run scores on the order of a hundred
thousand renders, which rules out interpreting these loops.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .genomes import InterpreterGenome, RepresentationGenome, SetupKind
from .imaging import PalettedImage


@njit(cache=True)
def _paint_chunks(starts, attrs, out):
    n_pixels = out.shape[0]
    for j in range(starts.shape[0]):
        s = starts[j]
        e = s + attrs[j, 0]
        if e > n_pixels:
            e = n_pixels
        c = np.uint8(attrs[j, 1])
        for p in range(s, e):
            out[p] = c


@njit(cache=True)
def _paint_polygons(coords, attrs, out):
    h, w = out.shape
    n_shapes = attrs.shape[0]
    max_sides = 0
    for j in range(n_shapes):
        if attrs[j, 0] > max_sides:
            max_sides = attrs[j, 0]
    toggles = np.empty(max_sides, dtype=np.int64)

    cursor = 0
    for j in range(n_shapes):
        sides = attrs[j, 0]
        color = np.uint8(attrs[j, 1])
        ymin = coords[cursor, 1]
        ymax = coords[cursor, 1]
        for v in range(cursor, cursor + sides):
            if coords[v, 1] < ymin:
                ymin = coords[v, 1]
            if coords[v, 1] > ymax:
                ymax = coords[v, 1]
        row_lo = max(0, ymin)
        row_hi = min(h - 1, ymax - 1)  # centers above ymax-0.5 are outside
        for row in range(row_lo, row_hi + 1):
            yc = 2 * row + 1
            n_tog = 0
            for v in range(sides):
                i1 = cursor + v
                i2 = cursor + (v + 1) % sides
                y1 = 2 * coords[i1, 1]
                y2 = 2 * coords[i2, 1]
                lo = min(y1, y2)
                hi = max(y1, y2)
                if lo <= yc and yc < hi:
                    x1 = 2 * coords[i1, 0]
                    x2 = 2 * coords[i2, 0]
                    num = x1 * (y2 - y1) + (yc - y1) * (x2 - x1)
                    den = y2 - y1
                    if den < 0:
                        num = -num
                        den = -den
                    # first column whose center 2c+1 exceeds the crossing
                    b = (num // den + 1) >> 1
                    if b < 0:
                        b = 0
                    if b > w:
                        b = w
                    toggles[n_tog] = b
                    n_tog += 1
            for a in range(1, n_tog):
                key = toggles[a]
                m = a - 1
                while m >= 0 and toggles[m] > key:
                    toggles[m + 1] = toggles[m]
                    m -= 1
                toggles[m + 1] = key
            for a in range(0, n_tog - 1, 2):
                stop = min(toggles[a + 1], w)
                for x in range(toggles[a], stop):
                    out[row, x] = color
        cursor += sides


@njit(cache=True)
def _paint_circles(centers, attrs, out):
    h, w = out.shape
    for j in range(centers.shape[0]):
        cx = centers[j, 0]
        cy = centers[j, 1]
        color = np.uint8(attrs[j, 0])
        r = attrs[j, 1]
        rr = r * r
        for y in range(max(0, cy - r), min(h - 1, cy + r) + 1):
            rem = rr - (y - cy) * (y - cy)
            dx = np.int64(np.sqrt(np.float64(rem)))
            while dx * dx > rem:  # pin the float sqrt to the exact isqrt
                dx -= 1
            while (dx + 1) * (dx + 1) <= rem:
                dx += 1
            for x in range(max(0, cx - dx), min(w - 1, cx + dx) + 1):
                out[y, x] = color


def render_indices(
    rep: RepresentationGenome,
    interp: InterpreterGenome,
    width: int,
    height: int,
) -> np.ndarray:
    """Paint a genome pair onto a fresh base-color canvas of palette indices.

    Returns a (height, width) uint8 array.  This is the engine's hot path;
    the ``render_*`` wrappers attach a palette for callers that want a
    finished image.
    """
    if not isinstance(rep, RepresentationGenome) or not isinstance(interp, InterpreterGenome):
        raise ValueError("render needs one position genome and one attribute genome")
    if rep.kind != interp.kind:
        raise ValueError(f"genome kinds differ: {rep.kind} vs {interp.kind}")
    kind = rep.kind
    if kind is SetupKind.CHUNKS:
        if len(rep.genes) != len(interp.genes):
            raise ValueError("chunk genome lengths differ")
        out = np.zeros(width * height, dtype=np.uint8)
        _paint_chunks(rep.genes, interp.genes, out)
        return out.reshape(height, width)
    out = np.zeros((height, width), dtype=np.uint8)
    if kind is SetupKind.POLYGONS:
        if int(interp.genes[:, 0].sum()) > len(rep.genes):
            raise ValueError("polygon genome asks for more vertices than the pool holds")
        _paint_polygons(rep.genes, interp.genes, out)
    else:
        if len(rep.genes) != len(interp.genes):
            raise ValueError("circle genome lengths differ")
        _paint_circles(rep.genes, interp.genes, out)
    return out


def _finish(rep, interp, width, height, palette, kind) -> PalettedImage:
    if rep.kind != kind or interp.kind != kind:
        raise ValueError(f"expected {kind.value} genomes, got {rep.kind.value}/{interp.kind.value}")
    palette = np.asarray(palette, dtype=np.uint8)
    if interp.genes.size:
        color_col = 0 if kind is SetupKind.CIRCLES else 1
        if int(interp.genes[:, color_col].max()) >= len(palette):
            raise ValueError("attribute genome references a color outside the palette")
    return PalettedImage(render_indices(rep, interp, width, height), palette)


def render_chunks(rep, interp, width, height, palette) -> PalettedImage:
    """Paint same-color pixel runs onto the flattened canvas."""
    return _finish(rep, interp, width, height, palette, SetupKind.CHUNKS)


def render_polygons(rep, interp, width, height, palette) -> PalettedImage:
    """Fill polygons whose vertices are consumed in order from the pool;
    leftover pool coordinates are ignored."""
    return _finish(rep, interp, width, height, palette, SetupKind.POLYGONS)


def render_circles(rep, interp, width, height, palette) -> PalettedImage:
    """Paint closed integer disks, clipped to the canvas."""
    return _finish(rep, interp, width, height, palette, SetupKind.CIRCLES)


def render_pair(rep, interp, width, height, palette) -> PalettedImage:
    """Dispatch to the renderer for the pair's setup kind."""
    return _finish(rep, interp, width, height, palette, rep.kind)
