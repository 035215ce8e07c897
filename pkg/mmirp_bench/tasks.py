"""Celery task solving one benchmark instance."""
from __future__ import annotations

import time
from typing import Any, Dict, Mapping

from mmirp.celery_app import celery
from mmirp_core.generator import generate_instance
from mmirp_core.schemas import GenConfig
from mmirp_ext import current_config
from mmirp_ext.errors import PackingInfeasibleError
from mmirp_ext.logging import log_info, log_warn
from mmirp_exact.baseline import baseline_direct
from mmirp_exact.oracle import oracle_enumerate
from mmirp_ga.engine import run_evolution
from mmirp_ga.schemas import GaConfig


@celery.task(name="mmirp_bench.solve_instance")
def solve_instance_task(
    entry: Mapping[str, Any],
    ga: Mapping[str, Any],
    repeats: int = 1,
    with_oracle: bool = True,
) -> Dict[str, Any]:
    """Generate the instance, run the adaptive GA ``repeats`` times and the baseline, and
    the oracle when the instance is small enough. Returns a JSON-safe row."""
    gen = GenConfig(**entry)
    ga_config = GaConfig(**ga)
    instance = generate_instance(gen)
    started = time.perf_counter()

    totals = []
    maga_seconds = 0.0
    for k in range(max(1, repeats)):
        run_config = ga_config.model_copy(update={"seed": ga_config.seed + k})
        t0 = time.perf_counter()
        result = run_evolution(instance, run_config)
        maga_seconds += time.perf_counter() - t0
        totals.append(result.best.total)

    baseline_total = None
    t0 = time.perf_counter()
    try:
        baseline_total = baseline_direct(instance).total
    except PackingInfeasibleError as exc:
        log_warn("Baseline schedule infeasible", component="bench", instance_id=instance.name, context={"error": exc.user_msg})
    baseline_seconds = time.perf_counter() - t0

    oracle_total = None
    if with_oracle and instance.n_customers * instance.periods <= current_config().ORACLE_MAX_CELLS:
        oracle_total = oracle_enumerate(instance).total

    elapsed_ms = int((time.perf_counter() - started) * 1000)
    log_info("Benchmark instance solved", component="bench", instance_id=instance.name, elapsed_ms=elapsed_ms, best=min(totals))
    return {
        "instance_id": gen.instance_id,
        "n_customers": gen.n_customers,
        "n_periods": gen.n_periods,
        "n_vehicles": gen.n_vehicles,
        "n_products": gen.n_products,
        "seed": gen.seed,
        "hbv_maga": min(totals),
        "mean_maga": sum(totals) / len(totals),
        "hbv_baseline": baseline_total,
        "oracle": oracle_total,
        "runtime_maga_s": maga_seconds / len(totals),
        "runtime_baseline_s": baseline_seconds,
    }


__all__ = ["solve_instance_task"]
