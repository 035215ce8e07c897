from __future__ import annotations

import numpy as np
import pydantic
import pytest

from mmirp_ext.errors import DegeneratePopulationError, DomainError
from mmirp_exact.baseline import baseline_direct
from mmirp_exact.oracle import oracle_enumerate
from mmirp_ga import AdaptiveRates, GaConfig, adapt_rates, crossover, mutate, run_evolution, select, selection_probabilities
from mmirp_ga.engine import LOG_COLUMNS, generation_log_frame, write_generation_log
from mmirp_ga.operators import COLUMN_AXIS, ROW_AXIS, swap_slices, swap_slices_between
from mmirp_schedule import ScheduleMatrix, check_feasibility


def _ga(**overrides) -> GaConfig:
    return GaConfig.from_config(**{"psize": 12, "k_max": 15, "max_generations": 60, "seed": 3, **overrides})


def test_selection_probabilities_favour_lower_cost():
    assert selection_probabilities([10.0, 30.0]).tolist() == pytest.approx([0.75, 0.25])
    probs = selection_probabilities([5.0, 7.0, 11.0, 2.0])
    assert probs.sum() == pytest.approx(1.0)
    assert probs[3] > probs[0] > probs[1] > probs[2]


def test_selection_rejects_degenerate_inputs():
    with pytest.raises(DegeneratePopulationError):
        selection_probabilities([4.0])
    with pytest.raises(DomainError):
        selection_probabilities([4.0, 0.0])


def test_empirical_selection_frequencies():
    fitness = np.arange(1.0, 11.0) * 7.0
    rng = np.random.default_rng(5)
    draws = np.bincount([select(fitness, rng) for _ in range(100_000)], minlength=10) / 100_000
    assert np.abs(draws - selection_probabilities(fitness)).max() < 0.02


def test_identical_parents_give_identical_children():
    parent = ScheduleMatrix.from_rows([[1, 0, 1], [1, 1, 0]])
    assert swap_slices_between(parent, parent, ROW_AXIS, 1) == (parent, parent)


def test_row_exchange_on_differing_row():
    a = ScheduleMatrix.from_rows([[1, 0, 1], [1, 0, 0], [1, 1, 1]])
    b = ScheduleMatrix.from_rows([[1, 0, 1], [1, 1, 1], [1, 1, 1]])
    child_a, child_b = swap_slices_between(a, b, ROW_AXIS, 1)
    assert (child_a, child_b) == (b, a)


def test_column_exchange_keeps_other_columns():
    a = ScheduleMatrix.from_rows([[1, 0, 1], [1, 0, 0]])
    b = ScheduleMatrix.from_rows([[0, 1, 1], [0, 1, 1]])
    child_a, _ = swap_slices_between(a, b, COLUMN_AXIS, 2)
    assert (child_a.bits[:, :2] == a.bits[:, :2]).all()
    assert (child_a.bits[:, 2] == b.bits[:, 2]).all()


def test_column_swap_trace_and_involution():
    m = ScheduleMatrix.from_rows([[1, 0], [1, 1]])
    swapped = swap_slices(m, COLUMN_AXIS, 0, 1)
    assert swapped == ScheduleMatrix.from_rows([[0, 1], [1, 1]])
    assert swap_slices(swapped, COLUMN_AXIS, 0, 1) == m
    assert sorted(swap_slices(m, ROW_AXIS, 0, 1).bits.ravel()) == sorted(m.bits.ravel())


def test_operators_return_feasible_children(tiny_instance):
    inst = tiny_instance(n_customers=4, n_periods=4, seed=4)
    rng = np.random.default_rng(8)
    a = ScheduleMatrix.ones(inst)
    b = ScheduleMatrix.from_rows([[1, 0, 1, 0]] * 4)
    for _ in range(20):
        children = [*crossover(a, b, rng, instance=inst), mutate(b, rng, instance=inst)]
        for child in children:
            if child is not None:
                assert check_feasibility(child, inst).feasible


@pytest.mark.parametrize(
    ("parent", "offspring", "direction"),
    [(115.0, 100.0, 1), (110.0, 100.0, 1), (100.0, 100.0, 0), (90.0, 100.0, -1), (85.0, 100.0, -1)],
)
def test_adapt_rates_dead_zone(parent, offspring, direction):
    rates = adapt_rates(AdaptiveRates(0.6, 0.1), parent, offspring)
    assert rates.cr == pytest.approx(0.6 + direction * 0.05)
    assert rates.mr == pytest.approx(0.1 + direction * 0.005)
    assert rates.history == ((parent, offspring),)


def test_adapt_rates_clamps_to_bounds():
    upper = adapt_rates(AdaptiveRates(0.95, 0.1), 120.0, 100.0)
    assert upper.cr == 0.95
    assert upper.mr == pytest.approx(0.105)
    lower = adapt_rates(AdaptiveRates(0.4, 0.01), 80.0, 100.0)
    assert (lower.cr, lower.mr) == (0.4, 0.01)
    with pytest.raises(DomainError):
        adapt_rates(lower, 0.0, 100.0)


def test_ga_config_rejects_rates_outside_bounds():
    with pytest.raises(pydantic.ValidationError):
        GaConfig(cr0=0.99)
    with pytest.raises(pydantic.ValidationError):
        GaConfig(psize=1)
    assert GaConfig.from_config(seed=None).seed == GaConfig.from_config().seed


def test_evolution_is_deterministic(tiny_instance):
    inst = tiny_instance(n_customers=4, n_periods=3, seed=6)
    first, second = run_evolution(inst, _ga()), run_evolution(inst, _ga())
    assert first.best.schedule == second.best.schedule
    assert first.best.total == second.best.total
    assert first.log == second.log


def test_best_fitness_never_increases(tiny_instance):
    result = run_evolution(tiny_instance(n_customers=4, n_periods=4, seed=2), _ga(k_max=10))
    best = [record.best for record in result.log]
    assert all(later <= earlier for earlier, later in zip(best, best[1:]))
    assert result.log[0].gen == 0
    assert result.stop_reason in {"k_max", "max_generations"}
    assert all(0.4 <= r.cr <= 0.95 and 0.01 <= r.mr <= 0.3 for r in result.log)


def test_generation_limit_is_respected(tiny_instance):
    result = run_evolution(tiny_instance(), _ga(max_generations=3, k_max=50))
    assert result.generations == 3
    assert result.stop_reason == "max_generations"
    assert len(result.log) == 4


def test_zero_cost_instance_stops_early(make_instance):
    inst = make_instance([(10.0, 10.0), (10.0, 10.0)], [[[0.0, 0.0], [0.0, 0.0]]], fixed_cost=0.0)
    result = run_evolution(inst, _ga())
    assert result.best.total == 0.0
    assert result.stop_reason == "zero_cost"


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_evolution_reaches_oracle_on_tiny_instances(tiny_instance, seed):
    inst = tiny_instance(n_customers=3, n_periods=3, seed=seed)
    optimum = oracle_enumerate(inst)
    found = run_evolution(inst, _ga(psize=20, k_max=30, max_generations=200, seed=seed, exact_routes=True))
    assert found.best.total == pytest.approx(optimum.total, abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(1, 6))
def test_evolution_beats_direct_delivery(tiny_instance, seed):
    inst = tiny_instance(n_customers=5, n_periods=5, n_vehicles=3, seed=seed)
    found = run_evolution(inst, _ga(psize=20, k_max=20, seed=seed))
    assert found.best.total <= baseline_direct(inst).total + 1e-9


def test_generation_log_csv(tmp_path, tiny_instance):
    result = run_evolution(tiny_instance(), _ga(max_generations=2))
    frame = generation_log_frame(result.log)
    assert list(frame.columns) == LOG_COLUMNS
    path = write_generation_log(tmp_path / "logs" / "gens.csv", result.log)
    assert path.read_text().splitlines()[0] == "gen,best,mean,cr,mr"


@pytest.mark.slow
def test_evolution_agrees_with_oracle_across_small_instances(tiny_instance):
    shapes = [(2, 2), (2, 3), (3, 2), (3, 3)]
    matched = 0
    for n_customers, n_periods in shapes:
        for seed in range(1, 6):
            inst = tiny_instance(n_customers=n_customers, n_periods=n_periods, seed=seed)
            optimum = oracle_enumerate(inst).total
            best = min(
                run_evolution(inst, _ga(psize=30, k_max=50, max_generations=200, seed=run, exact_routes=True)).best.total
                for run in range(5)
            )
            assert best >= optimum - 1e-9
            matched += abs(best - optimum) <= 1e-9
    assert matched >= 18
