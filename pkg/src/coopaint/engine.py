"""Two-population cooperative coevolution loop.

A position population and an attribute population evolve side by side.
Neither genome means anything alone, so an individual is scored by pairing
it with representatives of the other population (its top individuals from
the previous generation) and averaging the rendered images' error against
the target.  Both populations run the same machinery (tournament selection,
single-point crossover, per-individual mutation, elitism); the attribute
population breeds on a slower cadence.

Determinism contract: render-and-score evaluations are pure and consume no
randomness, so they may run in any order; every random draw (initialization,
selection, crossover, mutation) happens in one fixed sequence on the state's
single random.Random.  Two runs with the same config, target, and seed
produce identical logs, frames, and final populations.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .fitness import DOMAINS, channel_diff_table, table_mae
from .genomes import (
    Genome,
    GenomeLimits,
    InterpreterGenome,
    RepresentationGenome,
    SetupKind,
    clone,
    crossover,
    mutate,
    random_interpreter,
    random_representation,
)
from .imaging import PalettedImage
from .rendering import render_indices, render_pair

AGGREGATIONS = ("mean", "best", "worst")

# Per-setup run lengths; everything else shares one default.
DEFAULT_GENERATIONS = {
    SetupKind.CHUNKS: 20_000,
    SetupKind.POLYGONS: 50_000,
    SetupKind.CIRCLES: 50_000,
}

FITNESS_LOG_HEADER = (
    "generation,best_rep_fitness,mean_rep_fitness,"
    "best_interp_fitness,mean_interp_fitness,best_pair_fitness"
)

CHECKPOINT_FORMAT = "coopaint-checkpoint-v1"


@dataclass
class RunConfig:
    """Full parameterization of one evolutionary run."""

    setup: SetupKind
    generations: int
    limits: GenomeLimits
    seed: int = 0
    rep_pop_size: int = 20
    interp_pop_size: int = 10
    tournament_size: int = 4
    p_mut: float = 0.3
    n_representatives: int = 4
    n_elites: int = 2
    interp_evolve_every: int = 3
    palette_size: int = 4
    snapshot_every: int = 250
    fitness_aggregation: str = "mean"
    fitness_domain: str = "rgb"

    def validate(self) -> None:
        if self.generations < 1:
            raise ValueError("generations must be at least 1")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be at least 1")
        if self.n_representatives > min(self.rep_pop_size, self.interp_pop_size):
            raise ValueError("n_representatives cannot exceed either population size")
        if self.n_elites >= min(self.rep_pop_size, self.interp_pop_size):
            raise ValueError("n_elites must be smaller than both population sizes")
        if self.n_elites < 0:
            raise ValueError("n_elites cannot be negative")
        if not 0.0 <= self.p_mut <= 1.0:
            raise ValueError("p_mut must be in [0, 1]")
        if self.interp_evolve_every < 1:
            raise ValueError("interp_evolve_every must be at least 1")
        if self.palette_size < 1:
            raise ValueError("palette_size must be at least 1")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be at least 1")
        if self.fitness_aggregation not in AGGREGATIONS:
            raise ValueError(f"fitness_aggregation must be one of {AGGREGATIONS}")
        if self.fitness_domain not in DOMAINS:
            raise ValueError(f"fitness_domain must be one of {DOMAINS}")


def default_config(setup: SetupKind, width: int, height: int, seed: int = 0, **overrides) -> RunConfig:
    """RunConfig with the stock defaults for ``setup`` on a width x height canvas."""
    limit_fields = {f for f in GenomeLimits.__dataclass_fields__ if f not in ("width", "height")}
    limit_overrides = {k: overrides.pop(k) for k in list(overrides) if k in limit_fields}
    cfg = RunConfig(
        setup=setup,
        generations=overrides.pop("generations", DEFAULT_GENERATIONS[setup]),
        limits=GenomeLimits(width=width, height=height, **limit_overrides),
        seed=seed,
        **overrides,
    )
    cfg.validate()
    return cfg


@dataclass
class BestPair:
    """Best single pairing seen so far: the run's actual output artwork."""

    rep: RepresentationGenome
    interp: InterpreterGenome
    fitness: float


@dataclass
class EvolutionState:
    """Everything that changes from generation to generation.

    ``rep_fitness``/``interp_fitness`` hold the scores from the most recent
    evaluation phase.  Right after a step they describe the individuals that
    were just evaluated and bred from, not the fresh offspring.
    """

    generation: int
    rep_pop: list
    interp_pop: list
    rep_fitness: list | None
    interp_fitness: list | None
    rep_representatives: list
    interp_representatives: list
    rng: random.Random
    best_pair: BestPair | None


@dataclass
class GenerationStats:
    generation: int
    best_rep_fitness: float
    mean_rep_fitness: float
    best_interp_fitness: float
    mean_interp_fitness: float
    best_pair_fitness: float

    def csv_row(self) -> str:
        return (
            f"{self.generation},{self.best_rep_fitness!r},{self.mean_rep_fitness!r},"
            f"{self.best_interp_fitness!r},{self.mean_interp_fitness!r},"
            f"{self.best_pair_fitness!r}"
        )


@dataclass
class RunResult:
    log: list
    frames: list  # (generation, PalettedImage) in generation order
    best: BestPair
    state: EvolutionState


@dataclass
class IndividualEval:
    fitness: float
    best_partner: int
    best_pair_fitness: float


class PairEvaluator:
    """Scores genome pairings against one fixed target.

    Precomputes the palette difference table once; every evaluation is then
    a render plus an integer gather, with no allocation of intermediate
    images.
    """

    def __init__(self, target: PalettedImage, domain: str = "rgb"):
        if domain not in DOMAINS:
            raise ValueError(f"unknown fitness domain {domain!r}")
        self.target = target
        self.domain = domain
        self.width = target.width
        self.height = target.height
        self._target_flat = target.indices.ravel()
        self._target_i64 = self._target_flat.astype(np.int64)
        if domain == "rgb":
            self._table = channel_diff_table(target.palette, target.palette)
            self._denom = 3 * target.width * target.height
        else:
            self._denom = target.width * target.height

    def pair_fitness(self, rep: RepresentationGenome, interp: InterpreterGenome) -> float:
        idx = render_indices(rep, interp, self.width, self.height)
        if self.domain == "rgb":
            return table_mae(idx, self._target_flat, self._table, self._denom)
        diff = np.abs(idx.ravel().astype(np.int64) - self._target_i64)
        return int(diff.sum()) / self._denom

    def evaluate(self, genome: Genome, partners, aggregation: str = "mean") -> IndividualEval:
        if not partners:
            raise ValueError("cannot evaluate against an empty partner list")
        if isinstance(genome, RepresentationGenome):
            values = [self.pair_fitness(genome, p) for p in partners]
        else:
            values = [self.pair_fitness(p, genome) for p in partners]
        best_i = min(range(len(values)), key=lambda i: values[i])
        if aggregation == "mean":
            fit = sum(values) / len(values)
        elif aggregation == "best":
            fit = values[best_i]
        elif aggregation == "worst":
            fit = max(values)
        else:
            raise ValueError(f"unknown aggregation {aggregation!r}")
        return IndividualEval(fit, best_i, values[best_i])


def evaluate_individual(
    genome: Genome,
    partners,
    target: PalettedImage,
    aggregation: str = "mean",
    domain: str = "rgb",
) -> IndividualEval:
    """Score one genome by pairing it with each partner genome.

    The reported fitness aggregates the pairing errors (mean by default);
    the best single pairing is reported alongside for best-pair tracking.
    """
    return PairEvaluator(target, domain).evaluate(genome, partners, aggregation)


def select_representatives(pop, fitness_values, n: int):
    """The ``n`` lowest-error individuals; ties keep the lower index."""
    if fitness_values is None or len(fitness_values) != len(pop):
        raise ValueError("population must be evaluated before selecting representatives")
    if n > len(pop):
        raise ValueError("cannot select more representatives than individuals")
    order = sorted(range(len(pop)), key=lambda i: (fitness_values[i], i))
    return [pop[i] for i in order[:n]]


def tournament_select(pop, fitness_values, k: int, rng) -> Genome:
    """Draw ``k`` individuals uniformly with replacement, return the best.

    Fitness ties go to the lowest population index among those drawn.
    """
    if fitness_values is None or len(fitness_values) != len(pop):
        raise ValueError("population must be evaluated before tournament selection")
    if k < 1:
        raise ValueError("tournament size must be at least 1")
    draws = [rng.randrange(len(pop)) for _ in range(k)]
    return pop[min(draws, key=lambda i: (fitness_values[i], i))]


def breed_population(pop, fitness_values, cfg: RunConfig, rng):
    """Produce the next generation: elites first, then mutated crossover offspring.

    Offspring come in pairs from two tournament winners; the final child is
    dropped when the population size forces odd parity.  Genomes of length 1
    cannot cross, so their offspring are mutated parent clones.
    """
    size = len(pop)
    order = sorted(range(size), key=lambda i: (fitness_values[i], i))
    nxt = [clone(pop[i]) for i in order[: cfg.n_elites]]
    while len(nxt) < size:
        p1 = tournament_select(pop, fitness_values, cfg.tournament_size, rng)
        p2 = tournament_select(pop, fitness_values, cfg.tournament_size, rng)
        if len(p1.genes) >= 2:
            c1, c2 = crossover(p1, p2, rng)
        else:
            c1, c2 = clone(p1), clone(p2)
        c1 = mutate(c1, cfg.limits, cfg.palette_size, cfg.p_mut, rng)
        c2 = mutate(c2, cfg.limits, cfg.palette_size, cfg.p_mut, rng)
        nxt.append(c1)
        if len(nxt) < size:
            nxt.append(c2)
    return nxt


def init_state(cfg: RunConfig) -> EvolutionState:
    """Random populations, plus generation-0 representatives.

    No previous generation exists yet, so the first representatives are
    drawn uniformly (without replacement) from each fresh population:
    positions first, then attributes, matching the init draw order.
    """
    cfg.validate()
    rng = random.Random(cfg.seed)
    rep_pop = [
        random_representation(cfg.setup, cfg.limits, rng) for _ in range(cfg.rep_pop_size)
    ]
    interp_pop = [
        random_interpreter(cfg.setup, cfg.limits, cfg.palette_size, rng)
        for _ in range(cfg.interp_pop_size)
    ]
    rep_reps = [rep_pop[i] for i in rng.sample(range(cfg.rep_pop_size), cfg.n_representatives)]
    interp_reps = [
        interp_pop[i] for i in rng.sample(range(cfg.interp_pop_size), cfg.n_representatives)
    ]
    return EvolutionState(
        generation=0,
        rep_pop=rep_pop,
        interp_pop=interp_pop,
        rep_fitness=None,
        interp_fitness=None,
        rep_representatives=rep_reps,
        interp_representatives=interp_reps,
        rng=rng,
        best_pair=None,
    )


def _track_best(state: EvolutionState, rep, interp, value: float) -> None:
    # Strict improvement only, so the earliest pairing wins ties and the
    # tracked fitness never increases.
    if state.best_pair is None or value < state.best_pair.fitness:
        state.best_pair = BestPair(rep, interp, value)


def step_generation(
    state: EvolutionState,
    cfg: RunConfig,
    target: PalettedImage,
    evaluator: PairEvaluator | None = None,
) -> EvolutionState:
    """Advance the state by one generation, in place.

    Order: score all positions against the attribute representatives, score
    all attributes against the position representatives, refresh both
    representative sets from those scores, breed the position population,
    breed the attribute population only on its cadence (otherwise carry it
    over unchanged), and bump the generation counter.

    One carve-out: when the cadence exceeds the run horizon the attribute
    population is frozen for the whole run, and its representative set is
    pinned too.  Re-ranking a never-breeding population against drifting
    partners would wobble the evaluation environment, which is what frozen
    mode exists to rule out; pinning keeps the best position fitness
    non-increasing, as elitism promises under a fixed environment.
    """
    ev = evaluator if evaluator is not None else PairEvaluator(target, cfg.fitness_domain)

    rep_fitness = []
    for g in state.rep_pop:
        r = ev.evaluate(g, state.interp_representatives, cfg.fitness_aggregation)
        rep_fitness.append(r.fitness)
        _track_best(state, g, state.interp_representatives[r.best_partner], r.best_pair_fitness)

    interp_fitness = []
    for g in state.interp_pop:
        r = ev.evaluate(g, state.rep_representatives, cfg.fitness_aggregation)
        interp_fitness.append(r.fitness)
        _track_best(state, state.rep_representatives[r.best_partner], g, r.best_pair_fitness)

    state.rep_fitness = rep_fitness
    state.interp_fitness = interp_fitness
    state.rep_representatives = select_representatives(
        state.rep_pop, rep_fitness, cfg.n_representatives
    )
    interps_frozen = cfg.interp_evolve_every > cfg.generations
    if not interps_frozen:
        state.interp_representatives = select_representatives(
            state.interp_pop, interp_fitness, cfg.n_representatives
        )

    state.rep_pop = breed_population(state.rep_pop, rep_fitness, cfg, state.rng)
    if (state.generation + 1) % cfg.interp_evolve_every == 0:
        state.interp_pop = breed_population(state.interp_pop, interp_fitness, cfg, state.rng)

    state.generation += 1
    return state


def run(cfg: RunConfig, target: PalettedImage, state: EvolutionState | None = None) -> RunResult:
    """Run the loop to ``cfg.generations``, collecting stats and snapshot frames.

    Pass a checkpointed ``state`` to resume; the continuation is
    bit-identical to the generations an uninterrupted run would have
    produced.  A frame of the best pairing is captured every
    ``snapshot_every`` generations and always at the final one.
    """
    cfg.validate()
    if target.width != cfg.limits.width or target.height != cfg.limits.height:
        raise ValueError("target dimensions do not match the configured canvas")
    if target.n_colors != cfg.palette_size:
        raise ValueError(
            f"target palette has {target.n_colors} colors but config expects {cfg.palette_size}"
        )
    st = state if state is not None else init_state(cfg)
    ev = PairEvaluator(target, cfg.fitness_domain)
    log = []
    frames = []
    while st.generation < cfg.generations:
        step_generation(st, cfg, target, evaluator=ev)
        gen = st.generation - 1
        log.append(
            GenerationStats(
                generation=gen,
                best_rep_fitness=min(st.rep_fitness),
                mean_rep_fitness=sum(st.rep_fitness) / len(st.rep_fitness),
                best_interp_fitness=min(st.interp_fitness),
                mean_interp_fitness=sum(st.interp_fitness) / len(st.interp_fitness),
                best_pair_fitness=st.best_pair.fitness,
            )
        )
        if gen % cfg.snapshot_every == 0 or gen == cfg.generations - 1:
            frames.append(
                (
                    gen,
                    render_pair(
                        st.best_pair.rep,
                        st.best_pair.interp,
                        cfg.limits.width,
                        cfg.limits.height,
                        target.palette,
                    ),
                )
            )
    return RunResult(log=log, frames=frames, best=st.best_pair, state=st)


def write_fitness_log(log, path) -> None:
    """CSV, one row per generation; floats via repr so they round-trip."""
    lines = [FITNESS_LOG_HEADER]
    lines.extend(row.csv_row() for row in log)
    Path(path).write_text("\n".join(lines) + "\n")


# ----------------------------------------------------------------------
# Checkpointing
# ----------------------------------------------------------------------

def _genome_to_json(g: Genome) -> dict:
    return {
        "type": "representation" if isinstance(g, RepresentationGenome) else "interpreter",
        "kind": g.kind.value,
        "genes": g.genes.tolist(),
    }


def _genome_from_json(d: dict) -> Genome:
    cls = RepresentationGenome if d["type"] == "representation" else InterpreterGenome
    return cls(SetupKind(d["kind"]), np.array(d["genes"], dtype=np.int64))


def save_checkpoint(cfg: RunConfig, state: EvolutionState, path) -> None:
    """Write config plus complete mutable state as self-describing JSON.

    The RNG state is captured verbatim, so a resumed run replays the exact
    draw sequence an uninterrupted run would have made.
    """
    cfg_dict = asdict(cfg)
    cfg_dict["setup"] = cfg.setup.value
    rng_state = state.rng.getstate()
    doc = {
        "format": CHECKPOINT_FORMAT,
        "config": cfg_dict,
        "state": {
            "generation": state.generation,
            "rep_pop": [_genome_to_json(g) for g in state.rep_pop],
            "interp_pop": [_genome_to_json(g) for g in state.interp_pop],
            "rep_fitness": state.rep_fitness,
            "interp_fitness": state.interp_fitness,
            "rep_representatives": [_genome_to_json(g) for g in state.rep_representatives],
            "interp_representatives": [_genome_to_json(g) for g in state.interp_representatives],
            "rng_state": [rng_state[0], list(rng_state[1]), rng_state[2]],
            "best_pair": None
            if state.best_pair is None
            else {
                "rep": _genome_to_json(state.best_pair.rep),
                "interp": _genome_to_json(state.best_pair.interp),
                "fitness": state.best_pair.fitness,
            },
        },
    }
    Path(path).write_text(json.dumps(doc))


def load_checkpoint(path) -> tuple[RunConfig, EvolutionState]:
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"not a recognized checkpoint file: {path}")
    c = doc["config"]
    cfg = RunConfig(
        setup=SetupKind(c["setup"]),
        generations=c["generations"],
        limits=GenomeLimits(**c["limits"]),
        seed=c["seed"],
        rep_pop_size=c["rep_pop_size"],
        interp_pop_size=c["interp_pop_size"],
        tournament_size=c["tournament_size"],
        p_mut=c["p_mut"],
        n_representatives=c["n_representatives"],
        n_elites=c["n_elites"],
        interp_evolve_every=c["interp_evolve_every"],
        palette_size=c["palette_size"],
        snapshot_every=c["snapshot_every"],
        fitness_aggregation=c["fitness_aggregation"],
        fitness_domain=c["fitness_domain"],
    )
    s = doc["state"]
    rng = random.Random()
    version, internal, gauss = s["rng_state"]
    rng.setstate((version, tuple(internal), gauss))
    bp = s["best_pair"]
    state = EvolutionState(
        generation=s["generation"],
        rep_pop=[_genome_from_json(g) for g in s["rep_pop"]],
        interp_pop=[_genome_from_json(g) for g in s["interp_pop"]],
        rep_fitness=s["rep_fitness"],
        interp_fitness=s["interp_fitness"],
        rep_representatives=[_genome_from_json(g) for g in s["rep_representatives"]],
        interp_representatives=[_genome_from_json(g) for g in s["interp_representatives"]],
        rng=rng,
        best_pair=None
        if bp is None
        else BestPair(
            _genome_from_json(bp["rep"]), _genome_from_json(bp["interp"]), bp["fitness"]
        ),
    )
    return cfg, state
