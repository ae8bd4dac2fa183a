"""Command-line entry point.

Quantizes the input PNG, runs the coevolutionary loop, and writes the run
artifacts into the output directory:

    target.png          the quantized image evolution is scored against
    frame_NNNNNN.png    best pairing at each snapshot generation
    fitness_log.csv     one row per generation
    trajectory.gif      the snapshot frames as an animation
    run_config          every resolved parameter, reusable via --config

Settings resolve in three layers: built-in defaults, then a key=value
--config file, then explicit flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import default_config, run, write_fitness_log
from .genomes import GenomeLimits, SetupKind
from .imaging import assemble_gif, load_image, quantize, save_png

GIF_FRAME_DELAY_CS = 10

_INT_KEYS = (
    "generations",
    "seed",
    "snapshot_every",
    "colors",
    "rep_pop_size",
    "interp_pop_size",
    "tournament_size",
    "n_representatives",
    "n_elites",
    "interp_evolve_every",
    "n_chunks",
    "chunk_len_min",
    "chunk_len_max",
    "n_polygons",
    "sides_min",
    "sides_max",
    "n_circles",
    "radius_min",
    "radius_max",
)
_FLOAT_KEYS = ("p_mut",)
_STR_KEYS = ("image", "setup", "fitness_aggregation", "fitness_domain")
_CONFIG_KEYS = set(_INT_KEYS) | set(_FLOAT_KEYS) | set(_STR_KEYS)


def parse_config_file(path) -> dict:
    """Read `key = value` lines; '#' starts a comment, blank lines are skipped."""
    settings = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
        try:
            if key in _INT_KEYS:
                settings[key] = int(value)
            elif key in _FLOAT_KEYS:
                settings[key] = float(value)
            else:
                settings[key] = value
        except ValueError:
            raise ValueError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coopaint",
        description="Coevolve a shape painting of a PNG image.",
    )
    parser.add_argument("--image", help="path to the PNG to paint toward")
    parser.add_argument(
        "--setup",
        choices=[k.value for k in SetupKind],
        help="shape vocabulary to evolve with",
    )
    parser.add_argument("--out-dir", default="out", help="output directory (default: ./out)")
    parser.add_argument("--generations", type=int, help="override the per-setup default")
    parser.add_argument("--seed", type=int, help="run seed (default: 0)")
    parser.add_argument("--snapshot-every", type=int, help="frame cadence (default: 250)")
    parser.add_argument("--colors", type=int, help="palette size for the target (default: 4)")
    parser.add_argument("--config", help="key=value settings file; flags still win")
    return parser


def _resolve_settings(args) -> dict:
    settings = {"seed": 0, "snapshot_every": 250, "colors": 4}
    if args.config:
        settings.update(parse_config_file(args.config))
    for key in ("image", "setup", "generations", "seed", "snapshot_every", "colors"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    return settings


_ENGINE_KEYS = (
    "rep_pop_size",
    "interp_pop_size",
    "tournament_size",
    "p_mut",
    "n_representatives",
    "n_elites",
    "interp_evolve_every",
    "snapshot_every",
    "fitness_aggregation",
    "fitness_domain",
)
_LIMIT_KEYS = tuple(
    sorted(set(GenomeLimits.__dataclass_fields__) - {"width", "height", "coord_pool"})
)


def resolve_config(settings: dict, width: int, height: int, palette_size: int):
    """Turn merged CLI settings into an engine config.

    Anything not mentioned keeps its stock default, including the per-setup
    generation count.
    """
    setup = SetupKind(settings["setup"])
    overrides = {k: settings[k] for k in (*_LIMIT_KEYS, *_ENGINE_KEYS) if k in settings}
    if "generations" in settings:
        overrides["generations"] = settings["generations"]
    return default_config(
        setup,
        width,
        height,
        seed=settings["seed"],
        palette_size=palette_size,
        **overrides,
    )


def write_run_config(path, settings: dict) -> None:
    keys = ["image", "setup"] + [k for k in (*_INT_KEYS, *_FLOAT_KEYS) if k in settings]
    keys += [k for k in ("fitness_aggregation", "fitness_domain") if k in settings]
    lines = [f"{k} = {settings[k]}" for k in keys]
    Path(path).write_text("\n".join(lines) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _resolve_settings(args)
        if "image" not in settings:
            raise ValueError("an input image is required (--image or config file)")
        if "setup" not in settings:
            raise ValueError("a setup is required (--setup or config file)")
        setup = SetupKind(settings["setup"])

        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        image = load_image(settings["image"])
        target = quantize(image, settings["colors"])
        save_png(target, out_dir / "target.png")

        cfg = resolve_config(settings, image.width, image.height, target.n_colors)

        # Echo the fully resolved run back out so it can be replayed exactly.
        resolved = dict(settings)
        resolved["generations"] = cfg.generations
        for key in _ENGINE_KEYS:
            if key != "snapshot_every":
                resolved[key] = getattr(cfg, key)
        for key in _LIMIT_KEYS:
            resolved[key] = getattr(cfg.limits, key)
        write_run_config(out_dir / "run_config", resolved)

        result = run(cfg, target)

        for gen, frame in result.frames:
            save_png(frame, out_dir / f"frame_{gen:06d}.png")
        write_fitness_log(result.log, out_dir / "fitness_log.csv")
        assemble_gif([f for _, f in result.frames], out_dir / "trajectory.gif",
                     GIF_FRAME_DELAY_CS)

        print(
            f"{setup.value}: {cfg.generations} generations, "
            f"best error {result.best.fitness:.4f}, "
            f"{len(result.frames)} frames -> {out_dir}"
        )
        return 0
    except (OSError, ValueError) as exc:
        print(f"coopaint: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
