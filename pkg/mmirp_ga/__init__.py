"""Modified adaptive genetic algorithm over schedule matrices."""
from __future__ import annotations

from mmirp_ga.adaptive import AdaptiveRates, adapt_rates
from mmirp_ga.engine import EvolutionResult, GenerationRecord, Population, evolve, run_evolution, write_generation_log
from mmirp_ga.operators import crossover, mutate, select, selection_probabilities, swap_slices, swap_slices_between
from mmirp_ga.schemas import GaConfig

__all__ = [
    "AdaptiveRates",
    "EvolutionResult",
    "GaConfig",
    "GenerationRecord",
    "Population",
    "adapt_rates",
    "crossover",
    "evolve",
    "mutate",
    "run_evolution",
    "select",
    "selection_probabilities",
    "swap_slices",
    "swap_slices_between",
    "write_generation_log",
]
