#!/usr/bin/env python3
"""Write a small deterministic sample PNG to paint toward.

Usage: python scripts/make_sample_image.py [path] [size]
"""

import sys

import numpy as np

from coopaint import RgbImage, save_png


def sample_image(size: int) -> RgbImage:
    px = np.zeros((size, size, 3), np.uint8)
    for y in range(size):
        for x in range(size):
            px[y, x] = (x * 255 // (size - 1), y * 255 // (size - 1), 90)
    cx = cy = size // 2
    r = size // 3
    for y in range(size):
        for x in range(size):
            if (x - cx) ** 2 + (y - cy) ** 2 <= r * r:
                px[y, x] = (235, 40, 40)
    px[: size // 5, :] = (25, 25, 30)
    return RgbImage(px)


def main() -> int:
    path = sys.argv[1] if len(sys.argv) > 1 else "sample.png"
    size = int(sys.argv[2]) if len(sys.argv) > 2 else 96
    save_png(sample_image(size), path)
    print(f"wrote {size}x{size} sample image to {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
