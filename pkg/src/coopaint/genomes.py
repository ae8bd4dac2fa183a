"""Genome encodings and variation operators for the three painting setups.

Every candidate picture is the pairing of two genomes from two coevolving
populations: a position genome saying where shapes go, and an attribute
genome saying what each shape looks like.

========  =========================  ==============================
setup     position gene              attribute gene
========  =========================  ==============================
chunks    1-D pixel start index      (run length, color)
polygons  (x, y) vertex pool entry   (vertex count, color)
circles   (x, y) center              (color, radius)
========  =========================  ==============================

Genes are stored as int64 numpy arrays: a flat vector for chunk starts and
an (n, 2) array everywhere else; one row is one gene.  All operators draw
from a caller-owned random.Random so that runs replay exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class SetupKind(enum.Enum):
    CHUNKS = "chunks"
    POLYGONS = "polygons"
    CIRCLES = "circles"


@dataclass(frozen=True)
class GenomeLimits:
    """Gene-range bounds for one canvas size.

    ``coord_pool`` defaults to ``n_polygons * sides_max`` so that a polygon
    attribute genome can never ask for more vertices than the position
    genome carries.
    """

    width: int
    height: int
    n_chunks: int = 5000
    chunk_len_min: int = 1
    chunk_len_max: int = 10
    n_polygons: int = 50
    sides_min: int = 3
    sides_max: int = 12
    coord_pool: int | None = None
    n_circles: int = 50
    radius_min: int = 3
    radius_max: int = 50

    def __post_init__(self):
        if self.coord_pool is None:
            object.__setattr__(self, "coord_pool", self.n_polygons * self.sides_max)
        if self.width < 1 or self.height < 1:
            raise ValueError("canvas must be at least 1x1")
        for name in ("n_chunks", "n_polygons", "n_circles"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for lo, hi in (
            ("chunk_len_min", "chunk_len_max"),
            ("sides_min", "sides_max"),
            ("radius_min", "radius_max"),
        ):
            if not 1 <= getattr(self, lo) <= getattr(self, hi):
                raise ValueError(f"need 1 <= {lo} <= {hi}")
        if self.coord_pool != self.n_polygons * self.sides_max:
            raise ValueError("coord_pool must equal n_polygons * sides_max")


@dataclass(eq=False)
class RepresentationGenome:
    """Positions only.  chunks: (n_chunks,) start indices; polygons:
    (coord_pool, 2) vertex pool; circles: (n_circles, 2) centers."""

    kind: SetupKind
    genes: np.ndarray


@dataclass(eq=False)
class InterpreterGenome:
    """Attributes only, one (field, field) row per shape; see module table."""

    kind: SetupKind
    genes: np.ndarray


Genome = RepresentationGenome | InterpreterGenome


def clone(genome: Genome) -> Genome:
    return type(genome)(genome.kind, genome.genes.copy())


def genes_equal(a: Genome, b: Genome) -> bool:
    return type(a) is type(b) and a.kind == b.kind and np.array_equal(a.genes, b.genes)


def representation_length(kind: SetupKind, limits: GenomeLimits) -> int:
    return {
        SetupKind.CHUNKS: limits.n_chunks,
        SetupKind.POLYGONS: limits.coord_pool,
        SetupKind.CIRCLES: limits.n_circles,
    }[kind]


def interpreter_length(kind: SetupKind, limits: GenomeLimits) -> int:
    return {
        SetupKind.CHUNKS: limits.n_chunks,
        SetupKind.POLYGONS: limits.n_polygons,
        SetupKind.CIRCLES: limits.n_circles,
    }[kind]


def random_representation(kind: SetupKind, limits: GenomeLimits, rng) -> RepresentationGenome:
    """Draw every position gene uniformly from its legal range."""
    if kind is SetupKind.CHUNKS:
        n_pixels = limits.width * limits.height
        genes = np.fromiter(
            (rng.randrange(n_pixels) for _ in range(limits.n_chunks)),
            dtype=np.int64,
            count=limits.n_chunks,
        )
    else:
        n = representation_length(kind, limits)
        genes = np.empty((n, 2), dtype=np.int64)
        for i in range(n):
            genes[i, 0] = rng.randrange(limits.width)
            genes[i, 1] = rng.randrange(limits.height)
    return RepresentationGenome(kind, genes)


def random_interpreter(
    kind: SetupKind, limits: GenomeLimits, palette_size: int, rng
) -> InterpreterGenome:
    """Draw every attribute gene uniformly from its legal range."""
    if palette_size < 1:
        raise ValueError("palette_size must be at least 1")
    n = interpreter_length(kind, limits)
    genes = np.empty((n, 2), dtype=np.int64)
    if kind is SetupKind.CHUNKS:
        for i in range(n):
            genes[i, 0] = rng.randint(limits.chunk_len_min, limits.chunk_len_max)
            genes[i, 1] = rng.randrange(palette_size)
    elif kind is SetupKind.POLYGONS:
        for i in range(n):
            genes[i, 0] = rng.randint(limits.sides_min, limits.sides_max)
            genes[i, 1] = rng.randrange(palette_size)
    else:
        for i in range(n):
            genes[i, 0] = rng.randrange(palette_size)
            genes[i, 1] = rng.randint(limits.radius_min, limits.radius_max)
    return InterpreterGenome(kind, genes)


def crossover(a: Genome, b: Genome, rng) -> tuple[Genome, Genome]:
    """Single-point crossover between two same-shaped genomes.

    The cut point is uniform over [1, L-1], always between genes (a
    coordinate pair or attribute tuple is never split).  The end positions
    are excluded: a cut there would only clone the parents, and cloning is
    elitism's job.  Parents are left untouched.
    """
    if type(a) is not type(b) or a.kind != b.kind:
        raise ValueError("cannot cross genomes of different kinds")
    length = len(a.genes)
    if len(b.genes) != length:
        raise ValueError("cannot cross genomes of different lengths")
    if length < 2:
        raise ValueError("crossover needs at least 2 genes")
    cut = rng.randrange(1, length)
    child1 = np.concatenate([a.genes[:cut], b.genes[cut:]])
    child2 = np.concatenate([b.genes[:cut], a.genes[cut:]])
    return type(a)(a.kind, child1), type(a)(a.kind, child2)


def _resample_gene(genome: Genome, i: int, limits: GenomeLimits, palette_size: int, rng):
    kind = genome.kind
    if isinstance(genome, RepresentationGenome):
        if kind is SetupKind.CHUNKS:
            genome.genes[i] = rng.randrange(limits.width * limits.height)
        else:
            genome.genes[i, 0] = rng.randrange(limits.width)
            genome.genes[i, 1] = rng.randrange(limits.height)
    elif kind is SetupKind.CHUNKS:
        genome.genes[i, 0] = rng.randint(limits.chunk_len_min, limits.chunk_len_max)
        genome.genes[i, 1] = rng.randrange(palette_size)
    elif kind is SetupKind.POLYGONS:
        genome.genes[i, 0] = rng.randint(limits.sides_min, limits.sides_max)
        genome.genes[i, 1] = rng.randrange(palette_size)
    else:
        genome.genes[i, 0] = rng.randrange(palette_size)
        genome.genes[i, 1] = rng.randint(limits.radius_min, limits.radius_max)


def mutate(genome: Genome, limits: GenomeLimits, palette_size: int, p_mut: float, rng) -> Genome:
    """With probability ``p_mut`` resample one uniformly chosen gene.

    The whole gene is redrawn: both halves of a coordinate pair or attribute
    tuple.  Otherwise the input genome is returned as-is.  Draw order is
    fixed: mutation coin, gene index, then the gene's fields.
    """
    if not 0.0 <= p_mut <= 1.0:
        raise ValueError("p_mut must be in [0, 1]")
    if rng.random() >= p_mut:
        return genome
    out = clone(genome)
    _resample_gene(out, rng.randrange(len(out.genes)), limits, palette_size, rng)
    return out


def validate_genome(genome: Genome, limits: GenomeLimits, palette_size: int) -> None:
    """Raise ValueError unless every gene count and value is within range."""
    kind, genes = genome.kind, genome.genes
    if isinstance(genome, RepresentationGenome):
        expect = representation_length(kind, limits)
        if kind is SetupKind.CHUNKS:
            if genes.shape != (expect,):
                raise ValueError(f"expected {expect} chunk starts, got {genes.shape}")
            _check_range(genes, 0, limits.width * limits.height - 1, "chunk start")
        else:
            if genes.shape != (expect, 2):
                raise ValueError(f"expected {expect} coordinate pairs, got {genes.shape}")
            _check_range(genes[:, 0], 0, limits.width - 1, "x coordinate")
            _check_range(genes[:, 1], 0, limits.height - 1, "y coordinate")
        return
    expect = interpreter_length(kind, limits)
    if genes.shape != (expect, 2):
        raise ValueError(f"expected {expect} attribute tuples, got {genes.shape}")
    if kind is SetupKind.CHUNKS:
        _check_range(genes[:, 0], limits.chunk_len_min, limits.chunk_len_max, "chunk length")
        _check_range(genes[:, 1], 0, palette_size - 1, "color")
    elif kind is SetupKind.POLYGONS:
        _check_range(genes[:, 0], limits.sides_min, limits.sides_max, "side count")
        _check_range(genes[:, 1], 0, palette_size - 1, "color")
    else:
        _check_range(genes[:, 0], 0, palette_size - 1, "color")
        _check_range(genes[:, 1], limits.radius_min, limits.radius_max, "radius")


def _check_range(values: np.ndarray, lo: int, hi: int, what: str) -> None:
    if values.size and not (int(values.min()) >= lo and int(values.max()) <= hi):
        raise ValueError(f"{what} outside [{lo}, {hi}]")
