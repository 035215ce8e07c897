"""Evolution loop of the modified adaptive genetic algorithm."""
from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from mmirp_core.models import Instance
from mmirp_ext.logging import log_debug, log_info
from mmirp_ga.adaptive import AdaptiveRates, adapt_rates
from mmirp_ga.operators import crossover, mutate, select
from mmirp_ga.schemas import GaConfig
from mmirp_routing.evaluate import RouteCache, evaluate_solution
from mmirp_routing.models import Solution
from mmirp_schedule.matrix import ScheduleMatrix
from mmirp_schedule.sampling import random_schedule

STOP_K_MAX = "k_max"
STOP_MAX_GENERATIONS = "max_generations"
STOP_ZERO_COST = "zero_cost"

_IMPROVEMENT = 1e-9
LOG_COLUMNS = ["gen", "best", "mean", "cr", "mr"]


@dataclass(frozen=True, slots=True)
class Member:
    schedule: ScheduleMatrix
    solution: Solution

    @property
    def fitness(self) -> float:
        return self.solution.total

    @property
    def rank_key(self) -> Tuple[float, bytes]:
        return self.solution.total, self.schedule.key


@dataclass(frozen=True, slots=True)
class GenerationRecord:
    gen: int
    best: float
    mean: float
    cr: float
    mr: float


@dataclass
class Population:
    members: List[Member]
    generation: int
    best: Member

    @property
    def fitness(self) -> np.ndarray:
        return np.array([m.fitness for m in self.members], dtype=float)


@dataclass(frozen=True)
class EvolutionResult:
    best: Solution
    log: Tuple[GenerationRecord, ...]
    stop_reason: str
    generations: int


class _Evaluator:
    """Fitness evaluation shared by one run; repeated schedules are priced once."""

    def __init__(self, instance: Instance, config: GaConfig) -> None:
        self.instance = instance
        self.exact_routes = config.exact_routes
        self.routes = RouteCache(instance.travel_cost)
        self._seen: Dict[bytes, Solution] = {}

    def __call__(self, schedule: ScheduleMatrix) -> Member:
        solution = self._seen.get(schedule.key)
        if solution is None:
            solution = evaluate_solution(schedule, self.instance, exact_routes=self.exact_routes, route_cache=self.routes)
            self._seen[schedule.key] = solution
        return Member(schedule, solution)


def survivors(pool: Sequence[Member], psize: int) -> List[Member]:
    """Best ``psize`` distinct schedules; duplicates only fill a short pool."""
    ranked = sorted(pool, key=lambda m: m.rank_key)
    unique: List[Member] = []
    repeats: List[Member] = []
    seen = set()
    for member in ranked:
        if member.schedule.key in seen:
            repeats.append(member)
        else:
            seen.add(member.schedule.key)
            unique.append(member)
    return (unique + repeats)[:psize]


def _record(population: Population, rates: AdaptiveRates) -> GenerationRecord:
    return GenerationRecord(
        gen=population.generation,
        best=population.best.fitness,
        mean=float(population.fitness.mean()),
        cr=rates.cr,
        mr=rates.mr,
    )


def run_evolution(instance: Instance, config: GaConfig | None = None) -> EvolutionResult:
    """Evolve a population of schedules and return the best one found.

    Deterministic for a fixed ``config.seed``: every random draw happens in
    a fixed sequential order.
    """
    config = config or GaConfig.from_config()
    rng = np.random.default_rng(config.seed)
    evaluate = _Evaluator(instance, config)
    mode = config.routing_capacity_mode
    n_cells = instance.n_customers * instance.periods
    started = time.perf_counter()

    members = survivors(
        [evaluate(random_schedule(instance, rng, routing_capacity_mode=mode)) for _ in range(config.psize)],
        config.psize,
    )
    population = Population(members=members, generation=0, best=members[0])
    rates = AdaptiveRates(config.cr0, config.mr0, config.cr_bounds, config.mr_bounds)
    log: List[GenerationRecord] = [_record(population, rates)]
    log_info(
        "Evolution started",
        component="ga",
        instance_id=instance.name,
        best=population.best.fitness,
        context={"psize": config.psize, "seed": config.seed},
    )

    stale = 0
    stop_reason = STOP_MAX_GENERATIONS
    for generation in range(1, config.max_generations + 1):
        if population.best.fitness <= 0:
            stop_reason = STOP_ZERO_COST
            break
        fitness = population.fitness
        offspring: List[Member] = []

        n_pairs = (int(round(rates.cr * config.psize)) + 1) // 2
        for _ in range(n_pairs):
            a = population.members[select(fitness, rng)]
            b = population.members[select(fitness, rng)]
            for child in crossover(a.schedule, b.schedule, rng, instance=instance, routing_capacity_mode=mode):
                if child is not None:
                    offspring.append(evaluate(child))

        n_mutations = min(config.psize, int(round(rates.mr * config.psize * n_cells)))
        for _ in range(n_mutations):
            parent = population.members[select(fitness, rng)]
            child = mutate(parent.schedule, rng, instance=instance, routing_capacity_mode=mode)
            if child is not None:
                offspring.append(evaluate(child))

        if offspring:
            mean_offspring = float(np.mean([m.fitness for m in offspring]))
            if mean_offspring > 0:
                rates = adapt_rates(rates, float(fitness.mean()), mean_offspring)

        members = survivors(population.members + offspring, config.psize)
        improved = members[0].fitness < population.best.fitness - _IMPROVEMENT
        population = Population(members=members, generation=generation, best=members[0] if improved else population.best)
        stale = 0 if improved else stale + 1
        log.append(_record(population, rates))

        if config.log_every and generation % config.log_every == 0:
            log_info(
                "Generation complete",
                component="ga",
                instance_id=instance.name,
                generation=generation,
                best=population.best.fitness,
                context={"cr": round(rates.cr, 4), "mr": round(rates.mr, 4), "offspring": len(offspring)},
            )
        if stale >= config.k_max:
            stop_reason = STOP_K_MAX
            break
    else:
        if population.best.fitness <= 0:
            stop_reason = STOP_ZERO_COST

    elapsed_ms = int((time.perf_counter() - started) * 1000)
    log_info(
        "Evolution finished",
        component="ga",
        instance_id=instance.name,
        generation=population.generation,
        best=population.best.fitness,
        stop_reason=stop_reason,
        elapsed_ms=elapsed_ms,
    )
    log_debug("Route cache usage", component="ga", context={"hits": evaluate.routes.hits, "misses": evaluate.routes.misses})
    return EvolutionResult(
        best=population.best.solution,
        log=tuple(log),
        stop_reason=stop_reason,
        generations=population.generation,
    )


def evolve(instance: Instance, config: GaConfig | None = None) -> Solution:
    return run_evolution(instance, config).best


def generation_log_frame(log: Sequence[GenerationRecord]) -> pd.DataFrame:
    return pd.DataFrame([(r.gen, r.best, r.mean, r.cr, r.mr) for r in log], columns=LOG_COLUMNS)


def write_generation_log(path: str | Path, log: Sequence[GenerationRecord]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    generation_log_frame(log).to_csv(target, index=False)
    return target


__all__ = [
    "EvolutionResult",
    "GenerationRecord",
    "LOG_COLUMNS",
    "Member",
    "Population",
    "STOP_K_MAX",
    "STOP_MAX_GENERATIONS",
    "STOP_ZERO_COST",
    "evolve",
    "generation_log_frame",
    "run_evolution",
    "survivors",
    "write_generation_log",
]
