"""Genetic-algorithm search over pulse-sequence parameters.

Genomes are flat real vectors [tau_1..tau_{n+1}, t_1..t_n, phi_1..phi_n].
The fitness of a genome is the mean trace fidelity against the target over
the configured amplitude grid. Selection is tournament (size 3), crossover
is uniform, mutation is Gaussian with a per-gene scale proportional to the
gene's range; out-of-bounds genes are clamped. Elites pass through
unchanged, which makes the best-fitness history non-decreasing.

All random draws happen in the serial generation loop, so a fixed seed
reproduces the trajectory bit-for-bit regardless of how the batched
fitness evaluation is parallelized internally.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fidelity import DEFAULT_GRID_POINTS, DEFAULT_OMEGA1_RANGE
from .kernels import FitnessKernel
from .sequence import PulseSequence, sequence_from_genome
from .targets import TargetGate

TWO_PI = 2.0 * np.pi
_PHASE_MAX = np.nextafter(TWO_PI, 0.0)


@dataclass(frozen=True)
class ParameterBounds:
    """Box bounds of the genome: per-delay and per-pulse maxima in us."""

    n_pulses: int
    tau_max: float = 4.0
    t_max: float = 4.0

    def __post_init__(self):
        if self.n_pulses < 1:
            raise ValueError("need at least one pulse")
        if self.tau_max <= 0 or self.t_max <= 0:
            raise ValueError("bounds must be positive")

    @property
    def genome_length(self) -> int:
        return 3 * self.n_pulses + 1

    def lower(self) -> np.ndarray:
        return np.zeros(self.genome_length)

    def upper(self) -> np.ndarray:
        n = self.n_pulses
        up = np.empty(self.genome_length)
        up[: n + 1] = self.tau_max
        up[n + 1 : 2 * n + 1] = self.t_max
        up[2 * n + 1 :] = _PHASE_MAX
        return up


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 100
    generations: int = 300
    crossover_rate: float = 0.9
    mutation_rate: float = 0.25
    mutation_scale: float = 0.05
    elite_count: int = 2
    tournament_size: int = 3
    rng_seed: int = 0
    omega1_range: tuple[float, float] = DEFAULT_OMEGA1_RANGE
    omega1_points: int = DEFAULT_GRID_POINTS
    omega1_nominal: float = 0.5
    early_stop_fitness: float | None = 0.999
    restarts: int = 1

    def __post_init__(self):
        if self.elite_count < 1:
            raise ValueError("elite_count must be >= 1")
        if self.elite_count >= self.population_size:
            raise ValueError("elite_count must be smaller than the population")
        for name in ("crossover_rate", "mutation_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


def ga_config_from_dict(doc: dict) -> GAConfig:
    """Build a GAConfig from its JSON document form."""
    kwargs = {}
    mapping = {
        "population": "population_size",
        "generations": "generations",
        "crossover_rate": "crossover_rate",
        "mutation_rate": "mutation_rate",
        "mutation_scale": "mutation_scale",
        "elites": "elite_count",
        "seed": "rng_seed",
        "restarts": "restarts",
        "early_stop": "early_stop_fitness",
    }
    for key, attr in mapping.items():
        if key in doc:
            kwargs[attr] = doc[key]
    if "omega1_grid" in doc:
        g = doc["omega1_grid"]
        kwargs["omega1_range"] = (float(g["min_MHz"]), float(g["max_MHz"]))
        kwargs["omega1_points"] = int(g["points"])
    return GAConfig(**kwargs)


def ga_config_to_dict(cfg: GAConfig) -> dict:
    return {
        "population": cfg.population_size,
        "generations": cfg.generations,
        "crossover_rate": cfg.crossover_rate,
        "mutation_rate": cfg.mutation_rate,
        "mutation_scale": cfg.mutation_scale,
        "elites": cfg.elite_count,
        "seed": cfg.rng_seed,
        "restarts": cfg.restarts,
        "early_stop": cfg.early_stop_fitness,
        "omega1_grid": {
            "min_MHz": cfg.omega1_range[0],
            "max_MHz": cfg.omega1_range[1],
            "points": cfg.omega1_points,
        },
    }


@dataclass(frozen=True)
class OptimizationResult:
    best_genome: np.ndarray
    best_fitness: float
    history: np.ndarray
    robustness_mean: float
    robustness_min: float
    per_point: np.ndarray
    omega1s: np.ndarray
    seed: int
    n_pulses: int
    omega1_nominal: float

    def best_sequence(self) -> PulseSequence:
        return sequence_from_genome(self.best_genome, self.n_pulses, self.omega1_nominal)

    def to_dict(self) -> dict:
        return {
            "best_genome": self.best_genome.tolist(),
            "best_fitness": self.best_fitness,
            "history": self.history.tolist(),
            "robustness": {
                "mean": self.robustness_mean,
                "min": self.robustness_min,
                "omega1s_MHz": self.omega1s.tolist(),
                "fidelities": self.per_point.tolist(),
            },
            "seed": self.seed,
            "n_pulses": self.n_pulses,
            "omega1_nominal_MHz": self.omega1_nominal,
        }


def fitness(genome, target: TargetGate, h: np.ndarray, cfg: GAConfig) -> float:
    """Mean robust fidelity of one genome (the GA objective)."""
    n_pulses = (np.asarray(genome).size - 1) // 3
    kern = _kernel(target, h, cfg, n_pulses)
    return float(kern.evaluate(genome).mean())


def _kernel(target, h, cfg: GAConfig, n_pulses: int) -> FitnessKernel:
    lo, hi = cfg.omega1_range
    if cfg.omega1_points == 1:
        grid = np.array([(lo + hi) / 2.0])
    else:
        grid = np.linspace(lo, hi, cfg.omega1_points)
    return FitnessKernel(h, target, grid, n_pulses)


def _duration(genomes: np.ndarray, n_pulses: int) -> np.ndarray:
    return genomes[:, : 2 * n_pulses + 1].sum(axis=1)


def _rank_keys(fits: np.ndarray, genomes: np.ndarray, n_pulses: int):
    """Sort order: fitness desc, then duration asc, then genome lexicographic."""
    dur = _duration(genomes, n_pulses)
    order = np.lexsort(tuple(genomes.T[::-1]) + (dur, -fits))
    return order


def _single_run(target, h, bounds: ParameterBounds, cfg: GAConfig, seed: int):
    rng = np.random.default_rng(seed)
    kern = _kernel(target, h, cfg, bounds.n_pulses)
    lo, hi = bounds.lower(), bounds.upper()
    span = hi - lo
    pop = rng.uniform(lo, hi, size=(cfg.population_size, bounds.genome_length))

    fits = kern.evaluate(pop).mean(axis=1)
    order = _rank_keys(fits, pop, bounds.n_pulses)
    pop, fits = pop[order], fits[order]
    history = [float(fits[0])]

    for _ in range(cfg.generations):
        if cfg.early_stop_fitness is not None and fits[0] >= cfg.early_stop_fitness:
            break
        children = np.empty((cfg.population_size - cfg.elite_count, bounds.genome_length))
        for c in range(children.shape[0]):
            i = rng.integers(0, cfg.population_size, size=cfg.tournament_size).min()
            j = rng.integers(0, cfg.population_size, size=cfg.tournament_size).min()
            if rng.random() < cfg.crossover_rate:
                mask = rng.random(bounds.genome_length) < 0.5
                child = np.where(mask, pop[i], pop[j])
            else:
                child = pop[i].copy()
            mutate = rng.random(bounds.genome_length) < cfg.mutation_rate
            noise = rng.normal(0.0, cfg.mutation_scale, bounds.genome_length) * span
            child = np.where(mutate, child + noise, child)
            children[c] = np.clip(child, lo, hi)
        child_fits = kern.evaluate(children).mean(axis=1)
        pop = np.vstack([pop[: cfg.elite_count], children])
        fits = np.concatenate([fits[: cfg.elite_count], child_fits])
        order = _rank_keys(fits, pop, bounds.n_pulses)
        pop, fits = pop[order], fits[order]
        history.append(float(fits[0]))

    per_point = kern.evaluate(pop[0])[0]
    return pop[0].copy(), float(fits[0]), np.array(history), per_point, kern.omega1s


def optimize(
    target: TargetGate,
    h: np.ndarray,
    bounds: ParameterBounds,
    cfg: GAConfig = GAConfig(),
) -> OptimizationResult:
    """Search for a pulse sequence implementing `target` under Hamiltonian `h`.

    With cfg.restarts > 1 the search is repeated with derived seeds
    (seed + i) and the best run is returned. Non-convergence is simply a
    low best fitness, never an exception.
    """
    best = None
    for i in range(cfg.restarts):
        seed = cfg.rng_seed + i
        genome, fit, history, per_point, omega1s = _single_run(target, h, bounds, cfg, seed)
        if best is None or fit > best[1]:
            best = (genome, fit, history, per_point, omega1s, seed)
    genome, fit, history, per_point, omega1s, seed = best
    return OptimizationResult(
        best_genome=genome,
        best_fitness=fit,
        history=history,
        robustness_mean=float(per_point.mean()),
        robustness_min=float(per_point.min()),
        per_point=per_point,
        omega1s=omega1s,
        seed=seed,
        n_pulses=bounds.n_pulses,
        omega1_nominal=cfg.omega1_nominal,
    )
