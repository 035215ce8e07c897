from __future__ import annotations

import numpy as np
import pulp
import pytest

from mmirp_core.generator import generate_instance
from mmirp_core.schemas import GenConfig
from mmirp_exact import assign_solution, baseline_direct, build_lp_model, export_lp, family_counts, oracle_enumerate, solution_values
from mmirp_exact.lp_export import named_coefficients, r_name, x_name
from mmirp_exact.oracle import feasible_rows
from mmirp_ext.errors import InstanceInfeasibleError, SizeLimitError
from mmirp_ga import GaConfig, run_evolution
from mmirp_routing.evaluate import evaluate_solution
from mmirp_schedule import ScheduleMatrix


@pytest.fixture
def two_customers(make_instance):
    return make_instance([(13.0, 14.0), (4.0, 10.0)], [[[5.0], [7.0]]], holding=[[1.5], [2.0]], name="two")


def _rows(problem: pulp.LpProblem):
    return {name: row.toDict() for name, row in problem.constraints.items()}


def test_lp_family_counts(two_customers):
    model = build_lp_model(two_customers)
    names = model.variablesDict()
    assert sum(name.startswith("x_") for name in names) == 9
    assert family_counts(model) == {"C2": 3, "C3": 3, "C4": 9, "C5": 3, "C6": 3, "C7": 2}
    assert len([v for v in model.variables() if v.isBinary()]) == 9


@pytest.mark.parametrize("n_customers, n_periods, n_vehicles, n_products", [(1, 1, 1, 1), (2, 2, 1, 2), (3, 2, 2, 1)])
def test_lp_counts_follow_closed_form(n_customers, n_periods, n_vehicles, n_products):
    inst = generate_instance(
        GenConfig(n_customers=n_customers, n_periods=n_periods, n_vehicles=n_vehicles, n_products=n_products, seed=1, demand_range=(5, 20))
    )
    nodes = n_customers + 1
    routed = n_periods * n_vehicles
    model = build_lp_model(inst)
    names = model.variablesDict()
    assert sum(name.startswith("x_") for name in names) == routed * nodes**2
    assert sum(name.startswith("y_") for name in names) == routed * n_products * nodes**2
    assert sum(name.startswith("r_") for name in names) == n_periods * n_products * nodes
    assert family_counts(model) == {
        "C2": routed * nodes,
        "C3": routed * nodes,
        "C4": routed * nodes**2,
        "C5": routed * n_products * nodes,
        "C6": n_periods * n_products * nodes,
        "C7": n_periods * n_customers,
    }


def test_evolved_solution_prices_identically_in_the_model(tiny_instance):
    inst = tiny_instance(n_customers=3, n_periods=3, seed=6)
    solution = run_evolution(inst, GaConfig.from_config(psize=10, k_max=10, max_generations=30, seed=4)).best
    model = build_lp_model(inst)
    assert assign_solution(model, solution_values(solution, inst)) == []
    assert model.objective.value() == pytest.approx(solution.total, abs=1e-6)


def test_flow_cuts_add_rows_and_variables(two_customers):
    model = build_lp_model(two_customers, flow_sec=True)
    counts = family_counts(model)
    assert counts["secflow_cap"] == 9
    assert counts["secflow_bal"] == 2
    assert sum(name.startswith("g_") for name in model.variablesDict()) == 9


def test_objective_prices_holding_and_departures(two_customers):
    objective = named_coefficients(build_lp_model(two_customers).objective)
    assert objective[r_name(1, 1, 1)] == 1.5
    assert objective[r_name(1, 2, 1)] == 2.0
    assert r_name(1, 0, 1) not in objective
    assert objective[x_name(1, 0, 1, 1)] == pytest.approx(10.0 + 5.0)
    assert objective[x_name(1, 1, 0, 1)] == pytest.approx(5.0)


@pytest.mark.parametrize("flow_sec", [False, True])
def test_solution_substitution_reproduces_total(explanatory_instance, explanatory_schedule, flow_sec):
    solution = evaluate_solution(explanatory_schedule, explanatory_instance)
    model = build_lp_model(explanatory_instance, flow_sec=flow_sec)
    values = solution_values(solution, explanatory_instance, flow_sec=flow_sec)
    assert assign_solution(model, values) == []
    assert model.objective.value() == pytest.approx(solution.total, abs=1e-6)


def test_substitution_on_evolved_style_schedule(tiny_instance):
    inst = tiny_instance(n_customers=3, n_periods=3, seed=4)
    solution = oracle_enumerate(inst)
    model = build_lp_model(inst)
    assert assign_solution(model, solution_values(solution, inst)) == []
    assert model.objective.value() == pytest.approx(solution.total, abs=1e-6)


def test_substitution_reports_broken_assignment(explanatory_instance, explanatory_schedule):
    solution = evaluate_solution(explanatory_schedule, explanatory_instance)
    model = build_lp_model(explanatory_instance)
    values = solution_values(solution, explanatory_instance)
    values[x_name(1, 0, 1, 1)] = 0.5
    values["z_unknown"] = 1.0
    found = assign_solution(model, values)
    assert "unknown variable z_unknown" in found
    assert x_name(1, 0, 1, 1) in found


def test_lp_file_is_written_by_pulp(tmp_path, explanatory_instance):
    export_lp(explanatory_instance, tmp_path / "model.lp")
    text = (tmp_path / "model.lp").read_text()
    assert text.startswith("\\* explanatory *\\\n")
    assert "\nSubject To\n" in text and "\nBinaries\n" in text
    assert text.endswith("End\n")


@pytest.mark.parametrize("flow_sec", [False, True])
def test_mps_file_reads_back_through_pulp(tmp_path, explanatory_instance, flow_sec):
    model = export_lp(explanatory_instance, tmp_path / "model.mps", flow_sec=flow_sec)
    variables, loaded = pulp.LpProblem.fromMPS(str(tmp_path / "model.mps"))
    assert set(variables) == set(model.variablesDict())
    assert named_coefficients(loaded.objective) == pytest.approx(named_coefficients(model.objective))
    written, read = _rows(model), _rows(loaded)
    assert set(read) == set(written)
    for name, row in written.items():
        assert read[name]["sense"] == row["sense"]
        assert read[name]["constant"] == pytest.approx(row["constant"])
        coeffs = {term["name"]: term["value"] for term in row["coefficients"]}
        assert {term["name"]: term["value"] for term in read[name]["coefficients"]} == pytest.approx(coeffs)


def test_oracle_prefers_stock_for_far_customer(make_instance):
    inst = make_instance([(10.0, 20.0)], [[[4.0, 6.0]]])
    solution = oracle_enumerate(inst)
    assert solution.schedule == ScheduleMatrix.from_rows([[1, 0]])
    assert solution.total == pytest.approx(10.0 + 20.0 + 6.0)


def test_oracle_on_zero_demand(make_instance):
    inst = make_instance([(3.0, 3.0), (5.0, 5.0)], [[[0.0, 0.0], [0.0, 0.0]]])
    solution = oracle_enumerate(inst)
    assert not solution.schedule.bits.any()
    assert solution.total == 0.0


def test_oracle_size_limit_and_infeasibility(tiny_instance, make_instance):
    with pytest.raises(SizeLimitError):
        oracle_enumerate(tiny_instance(n_customers=5, n_periods=5))
    overloaded = make_instance([(5.0, 5.0)], [[[500.0, 1.0]]], capacities=(300.0,))
    assert feasible_rows(overloaded, 0) == []
    with pytest.raises(InstanceInfeasibleError):
        oracle_enumerate(overloaded)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_baseline_holds_no_stock_and_dominates_oracle(tiny_instance, seed):
    inst = tiny_instance(n_customers=3, n_periods=3, seed=seed)
    baseline = baseline_direct(inst)
    assert baseline.cost.inventory == 0.0
    assert np.all(baseline.schedule.bits == 1)
    assert oracle_enumerate(inst).total <= baseline.total + 1e-9
