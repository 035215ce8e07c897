"""Command-line interface: instance generation, solving, export and benchmarking."""
from __future__ import annotations

import functools
from pathlib import Path
from typing import Any, Callable, Tuple

import click
import pandas as pd
import pydantic

from mmirp_bench.runner import run_benchmark
from mmirp_bench.stats import format_ttest, paired_t_test
from mmirp_bench.suite import SuiteConfig
from mmirp_core.generator import generate_instance, benchmark_grid
from mmirp_core.io import read_instance, write_instance
from mmirp_core.schemas import GenConfig
from mmirp_ext import current_config, init_runtime
from mmirp_ext.errors import AppError, BoundsFileError, ValidationError
from mmirp_ext.logging import log_error
from mmirp_exact.baseline import baseline_direct
from mmirp_exact.lp_export import export_lp, family_counts
from mmirp_exact.oracle import oracle_enumerate
from mmirp_ga.engine import run_evolution, write_generation_log
from mmirp_ga.schemas import GaConfig
from mmirp_routing.dump import dump_solution, write_solution
from mmirp_routing.models import CostBreakdown


def _handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except AppError as exc:
            click.secho(str(exc), fg="red", err=True)
            ctx.exit(exc.exit_code)
        except pydantic.ValidationError as exc:
            click.secho(f"Invalid parameters: {exc.errors()[0].get('msg', exc)}", fg="red", err=True)
            ctx.exit(ValidationError.exit_code)
        except click.exceptions.Exit:
            raise
        except Exception as exc:  # pragma: no cover - unexpected failures only
            log_error("Command failed", component="cli", exc_info=True, context={"command": ctx.command.name})
            click.secho(f"Unexpected error: {exc}", fg="red", err=True)
            ctx.exit(1)

    return wrapper


def _int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> Tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return tuple(int(item) for item in value.split(",") if item.strip())
    except ValueError as exc:
        raise click.BadParameter("expected comma-separated integers") from exc


def ga_options(func: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option("--seed", type=int, default=None, help="GA random seed"),
        click.option("--psize", type=int, default=None, help="Population size"),
        click.option("--cr", "cr0", type=float, default=None, help="Initial crossover rate"),
        click.option("--mr", "mr0", type=float, default=None, help="Initial mutation rate"),
        click.option("--kmax", "k_max", type=int, default=None, help="Stop after this many non-improving generations"),
        click.option("--max-gens", "max_generations", type=int, default=None, help="Generation limit"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _echo_cost(cost: CostBreakdown) -> None:
    for key, value in cost.as_dict().items():
        click.echo(f"{key}: {value:.6f}")


@click.group(help="Invroute inventory-routing toolkit")
@click.option("--config", "config_name", default=None, help="Configuration name (dev, prod, testing) or dotted path")
def manage_cli(config_name: str | None) -> None:
    """Root command group; resolves configuration before any subcommand runs."""
    init_runtime(config_name)


@manage_cli.command("gen", help="Generate instance files")
@click.option("--customers", "-I", "n_customers", type=int, default=5, show_default=True)
@click.option("--periods", "-T", "n_periods", type=int, default=5, show_default=True)
@click.option("--vehicles", "-V", "n_vehicles", type=int, default=3, show_default=True)
@click.option("--products", "-P", "n_products", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--demand-range", nargs=2, type=float, default=None, help="Demand bounds LO HI (default 10 50)")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Instance file to write")
@click.option("--suite", "suite_dir", type=click.Path(file_okay=False, path_type=Path), default=None, help="Write the whole benchmark grid here")
@_handle_errors
def gen_cmd(
    n_customers: int,
    n_periods: int,
    n_vehicles: int,
    n_products: int,
    seed: int,
    demand_range: Tuple[float, float] | None,
    out_path: Path | None,
    suite_dir: Path | None,
) -> None:
    if suite_dir is not None:
        written = 0
        for config in benchmark_grid(seeds=current_config().BENCH_SEEDS):
            write_instance(suite_dir / f"{config.instance_id}.txt", generate_instance(config))
            written += 1
        click.secho(f"Wrote {written} instances to {suite_dir}", fg="green")
        return
    extra = {"demand_range": demand_range} if demand_range else {}
    config = GenConfig(n_customers=n_customers, n_periods=n_periods, n_vehicles=n_vehicles, n_products=n_products, seed=seed, **extra)
    target = out_path or Path(f"{config.instance_id}.txt")
    write_instance(target, generate_instance(config))
    click.secho(f"Wrote {target}", fg="green")


@manage_cli.command("solve", help="Run the adaptive GA on one instance")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@ga_options
@click.option("--exact-routes", is_flag=True, help="Price routes with the exact TSP")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Solution file")
@click.option("--log", "log_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Generation log CSV")
@_handle_errors
def solve_cmd(instance_path: Path, exact_routes: bool, out_path: Path | None, log_path: Path | None, **ga: Any) -> None:
    instance = read_instance(instance_path)
    config = GaConfig.from_config(exact_routes=exact_routes, **ga)
    result = run_evolution(instance, config)
    _echo_cost(result.best.cost)
    click.echo(f"generations: {result.generations} ({result.stop_reason})")
    if out_path is not None:
        write_solution(out_path, result.best, name=instance.name)
    if log_path is not None:
        write_generation_log(log_path, result.log)


@manage_cli.command("baseline", help="Evaluate the deliver-every-period schedule")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_handle_errors
def baseline_cmd(instance_path: Path) -> None:
    _echo_cost(baseline_direct(read_instance(instance_path)).cost)


@manage_cli.command("oracle", help="Enumerate every schedule of a small instance")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--show", is_flag=True, help="Print the routes as well")
@_handle_errors
def oracle_cmd(instance_path: Path, show: bool) -> None:
    instance = read_instance(instance_path)
    solution = oracle_enumerate(instance)
    if show:
        click.echo(dump_solution(solution, name=instance.name), nl=False)
    else:
        _echo_cost(solution.cost)


@manage_cli.command("export-lp", help="Write the mixed-integer model in LP format (MPS for a .mps target)")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option("--flow-sec", is_flag=True, help="Add single-commodity flow subtour elimination rows")
@_handle_errors
def export_lp_cmd(instance_path: Path, out_path: Path, flow_sec: bool) -> None:
    problem = export_lp(read_instance(instance_path), out_path, flow_sec=flow_sec)
    counts = ", ".join(f"{family}={count}" for family, count in sorted(family_counts(problem).items()))
    click.echo(f"variables: {len(problem.variables())}")
    click.echo(f"constraints: {counts}")


@manage_cli.command("bench", help="Run the benchmark suite and write the CSV report")
@click.option("--customers", callback=_int_list, default=None, help="Comma-separated |I| values")
@click.option("--periods", callback=_int_list, default=None, help="Comma-separated |T| values")
@click.option("--vehicles", callback=_int_list, default=None, help="Comma-separated |V| values")
@click.option("--products", callback=_int_list, default=None, help="Comma-separated |P| values")
@click.option("--seeds", callback=_int_list, default=None, help="Comma-separated instance seeds")
@ga_options
@click.option("--bounds", "bounds_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="External LB/UB CSV")
@click.option("--repeats", type=int, default=1, show_default=True, help="GA runs per instance")
@click.option("--no-oracle", is_flag=True, help="Skip the exhaustive oracle")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="CSV report path")
@_handle_errors
def bench_cmd(
    customers: Tuple[int, ...] | None,
    periods: Tuple[int, ...] | None,
    vehicles: Tuple[int, ...] | None,
    products: Tuple[int, ...] | None,
    seeds: Tuple[int, ...] | None,
    bounds_path: Path | None,
    repeats: int,
    no_oracle: bool,
    out_path: Path | None,
    **ga: Any,
) -> None:
    if bounds_path is not None and not bounds_path.exists():
        raise BoundsFileError(user_msg=f"Bounds file not found: {bounds_path}")
    axes = {"customers": customers, "periods": periods, "vehicles": vehicles, "products": products, "seeds": seeds}
    suite = SuiteConfig(**{key: value for key, value in axes.items() if value is not None})
    target = out_path or Path(current_config().BENCH_OUTPUT_DIR) / "report.csv"
    report = run_benchmark(
        suite,
        GaConfig.from_config(**ga),
        bounds_path,
        repeats=repeats,
        with_oracle=not no_oracle,
        output=target,
    )
    click.secho(f"Wrote {len(report)} rows to {target}", fg="green")


@manage_cli.command("ttest", help="Paired t-test between two CSV columns")
@click.option("--csv", "csv_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--a", "column_a", required=True, help="First column")
@click.option("--b", "column_b", required=True, help="Second column")
@_handle_errors
def ttest_cmd(csv_path: Path, column_a: str, column_b: str) -> None:
    frame = pd.read_csv(csv_path)
    missing = [c for c in (column_a, column_b) if c not in frame.columns]
    if missing:
        raise ValidationError(user_msg=f"Columns not in {csv_path.name}: {', '.join(missing)}")
    paired = frame[[column_a, column_b]].dropna()
    click.echo(format_ttest(paired_t_test(paired[column_a].to_numpy(), paired[column_b].to_numpy())))


__all__ = ["manage_cli"]
