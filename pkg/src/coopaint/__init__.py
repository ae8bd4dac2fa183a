"""coopaint: cooperative coevolution that paints images with simple shapes.

Two populations evolve together: one encodes shape positions, the other
shape attributes (sizes, side counts, radii, colors).  Pairs of individuals
render to an indexed image that is scored by mean absolute error against a
palette-reduced target image.
"""

from .engine import (
    BestPair,
    EvolutionState,
    GenerationStats,
    PairEvaluator,
    RunConfig,
    RunResult,
    breed_population,
    default_config,
    evaluate_individual,
    init_state,
    load_checkpoint,
    run,
    save_checkpoint,
    select_representatives,
    step_generation,
    tournament_select,
    write_fitness_log,
)
from .fitness import mae
from .genomes import (
    GenomeLimits,
    InterpreterGenome,
    RepresentationGenome,
    SetupKind,
    crossover,
    mutate,
    random_interpreter,
    random_representation,
    validate_genome,
)
from .imaging import (
    PalettedImage,
    RgbImage,
    assemble_gif,
    load_image,
    quantize,
    save_png,
)
from .rendering import (
    render_chunks,
    render_circles,
    render_pair,
    render_polygons,
)

__version__ = "0.1.0"

__all__ = [
    "BestPair",
    "EvolutionState",
    "GenerationStats",
    "GenomeLimits",
    "InterpreterGenome",
    "PairEvaluator",
    "PalettedImage",
    "RepresentationGenome",
    "RgbImage",
    "RunConfig",
    "RunResult",
    "SetupKind",
    "assemble_gif",
    "breed_population",
    "crossover",
    "default_config",
    "evaluate_individual",
    "init_state",
    "load_checkpoint",
    "load_image",
    "mae",
    "mutate",
    "quantize",
    "random_interpreter",
    "random_representation",
    "render_chunks",
    "render_circles",
    "render_pair",
    "render_polygons",
    "run",
    "save_checkpoint",
    "save_png",
    "select_representatives",
    "step_generation",
    "tournament_select",
    "validate_genome",
    "write_fitness_log",
]
