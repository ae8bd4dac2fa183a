#!/usr/bin/env python3
"""Desk-scale demo: evolve all three shape vocabularies on the sample image.

Produces demo_out/<setup>/ with frames, a fitness log, and an animation
each.  A few thousand generations per setup, a couple of minutes total.

Usage: python scripts/run_demo.py [out_dir]
"""

import sys
import tempfile
from pathlib import Path

from make_sample_image import sample_image

from coopaint import save_png
from coopaint.cli import main as coopaint_main


def main() -> int:
    out_root = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
    with tempfile.TemporaryDirectory() as tmp:
        image_path = Path(tmp) / "sample.png"
        save_png(sample_image(64), image_path)
        for setup in ("chunks", "polygons", "circles"):
            rc = coopaint_main(
                [
                    "--image", str(image_path),
                    "--setup", setup,
                    "--generations", "3000",
                    "--snapshot-every", "150",
                    "--seed", "1",
                    "--out-dir", str(out_root / setup),
                ]
            )
            if rc != 0:
                return rc
    print(f"demo artifacts under {out_root}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
