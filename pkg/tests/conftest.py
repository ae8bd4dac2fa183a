import random

import numpy as np
import pytest

from coopaint import GenomeLimits, PalettedImage, RgbImage, quantize


def synthetic_rgb(width, height):
    """Deterministic structured test image: gradient, a disk, a rectangle."""
    px = np.zeros((height, width, 3), np.uint8)
    for y in range(height):
        for x in range(width):
            px[y, x] = (
                x * 255 // max(1, width - 1),
                y * 255 // max(1, height - 1),
                96,
            )
    cx, cy, r = width // 3, height // 3, max(2, min(width, height) // 4)
    for y in range(height):
        for x in range(width):
            if (x - cx) ** 2 + (y - cy) ** 2 <= r * r:
                px[y, x] = (230, 30, 30)
    px[height * 2 // 3 :, width * 2 // 3 :] = (20, 30, 200)
    return RgbImage(px)


def synthetic_target(width, height, k=4):
    return quantize(synthetic_rgb(width, height), k)


def random_palette(rng, k):
    """k pairwise-distinct random colors as a (k, 3) uint8 array."""
    seen = set()
    colors = []
    while len(colors) < k:
        c = (rng.randrange(256), rng.randrange(256), rng.randrange(256))
        if c not in seen:
            seen.add(c)
            colors.append(c)
    return np.array(colors, dtype=np.uint8)


def random_paletted(rng, width, height, k):
    palette = random_palette(rng, k)
    idx = np.array(
        [[rng.randrange(k) for _ in range(width)] for _ in range(height)],
        dtype=np.uint8,
    )
    return PalettedImage(idx, palette)


def small_limits(width, height, **kw):
    """Limits sized for hand-checkable tests; callers override per setup."""
    defaults = dict(
        n_chunks=4,
        chunk_len_min=1,
        chunk_len_max=4,
        n_polygons=2,
        sides_min=3,
        sides_max=4,
        n_circles=3,
        radius_min=1,
        radius_max=3,
    )
    defaults.update(kw)
    return GenomeLimits(width=width, height=height, **defaults)


class ScriptedRng:
    """Stand-in RNG that replays a fixed list of draws."""

    def __init__(self, values):
        self.values = list(values)

    def _next(self):
        if not self.values:
            raise AssertionError("scripted RNG ran out of values")
        return self.values.pop(0)

    def random(self):
        return self._next()

    def randrange(self, start, stop=None):
        return self._next()

    def randint(self, a, b):
        return self._next()

    def sample(self, population, k):
        return [population[self._next()] for _ in range(k)]


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
