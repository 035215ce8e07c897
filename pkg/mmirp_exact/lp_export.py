"""Mixed-integer model of the full problem as a ``pulp.LpProblem``.

Nodes are 0 (supplier) and the customer ids 1..|I|; periods, vehicles and
products are 1-based. Variable names:

    x_v{v}_i{i}_j{j}_t{t}        binary, edge (i, j) used by vehicle v in period t
    y_v{v}_p{p}_i{i}_j{j}_t{t}   units of product p on board along that edge
    r_p{p}_i{i}_t{t}             end-of-period stock of product p at node i
    g_v{v}_i{i}_j{j}_t{t}        visits still ahead along the edge (flow cuts only)

Edges include the self-loops (i, i), so every x family spans |Ī|² pairs.
Row families C2..C7 cover out-degree, flow conservation of x, edge
capacity, load monotonicity, stock balance and storage. The supplier's
stock starts at the horizon's total demand and its load-monotonicity row
is reversed (goods leave the supplier).
"""
from __future__ import annotations

import re
from collections import Counter
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np
import pulp

from mmirp_core.models import Instance
from mmirp_ext.errors import ValidationError
from mmirp_ext.logging import log_info
from mmirp_routing.models import Solution

_SENSES = {"<=": pulp.LpConstraintLE, ">=": pulp.LpConstraintGE, "=": pulp.LpConstraintEQ}
_FAMILY = re.compile(r"^(.*?)_(?:v|i|p)\d")

Terms = Iterable[Tuple[str, float]]


def x_name(v: int, i: int, j: int, t: int) -> str:
    return f"x_v{v}_i{i}_j{j}_t{t}"


def y_name(v: int, p: int, i: int, j: int, t: int) -> str:
    return f"y_v{v}_p{p}_i{i}_j{j}_t{t}"


def r_name(p: int, i: int, t: int) -> str:
    return f"r_p{p}_i{i}_t{t}"


def g_name(v: int, i: int, j: int, t: int) -> str:
    return f"g_v{v}_i{i}_j{j}_t{t}"


def family_of(name: str) -> str:
    match = _FAMILY.match(name)
    return match.group(1) if match else name


def family_counts(problem: pulp.LpProblem) -> Dict[str, int]:
    return dict(Counter(family_of(name) for name in problem.constraints))


def named_coefficients(expression: pulp.LpAffineExpression) -> Dict[str, float]:
    return {term["name"]: term["value"] for term in expression.toDict()}


class _ModelBuilder:
    def __init__(self, name: str) -> None:
        self.problem = pulp.LpProblem(name, pulp.LpMinimize)
        self.variables: Dict[str, pulp.LpVariable] = {}

    def variable(self, name: str, cat: str) -> None:
        if name in self.variables:
            raise ValidationError(user_msg=f"Duplicate LP variable {name}")
        self.variables[name] = pulp.LpVariable(name, lowBound=0, cat=cat)

    def expression(self, terms: Terms) -> pulp.LpAffineExpression:
        merged: Dict[str, float] = {}
        for var, coef in terms:
            merged[var] = merged.get(var, 0.0) + float(coef)
        return pulp.LpAffineExpression([(self.variables[v], c) for v, c in merged.items() if c != 0.0])

    def row(self, name: str, terms: Terms, sense: str, rhs: float) -> None:
        self.problem += pulp.LpConstraint(self.expression(terms), sense=_SENSES[sense], name=name, rhs=float(rhs))


def build_lp_model(instance: Instance, *, flow_sec: bool = False) -> pulp.LpProblem:
    nodes = range(instance.n_customers + 1)
    customers = range(1, instance.n_customers + 1)
    periods = range(1, instance.periods + 1)
    vehicles = instance.vehicles
    products = instance.products
    cost = instance.travel_cost
    demand = instance.demand
    opening_stock = demand.sum(axis=(1, 2))

    model = _ModelBuilder(instance.name)

    for t in periods:
        for veh in vehicles:
            for i in nodes:
                for j in nodes:
                    model.variable(x_name(veh.id, i, j, t), pulp.LpBinary)
                    for prod in products:
                        model.variable(y_name(veh.id, prod.id, i, j, t), pulp.LpContinuous)
                    if flow_sec:
                        model.variable(g_name(veh.id, i, j, t), pulp.LpContinuous)
        for prod in products:
            for i in nodes:
                model.variable(r_name(prod.id, i, t), pulp.LpContinuous)

    # Fixed cost on leaving the supplier, travel on every edge, holding at customers.
    objective: List[Tuple[str, float]] = []
    for t in periods:
        for veh in vehicles:
            for i in nodes:
                for j in nodes:
                    coef = float(cost[i, j])
                    if i == 0 and j != 0:
                        coef += veh.fixed_cost(t)
                    objective.append((x_name(veh.id, i, j, t), coef))
        for i in customers:
            for prod in products:
                objective.append((r_name(prod.id, i, t), float(instance.holding[i - 1, prod.id - 1])))
    model.problem.setObjective(model.expression(objective))

    for t in periods:
        for veh in vehicles:
            v = veh.id
            for i in nodes:
                model.row(f"C2_v{v}_i{i}_t{t}", ((x_name(v, i, j, t), 1.0) for j in nodes), "<=", 1.0)
            for i in nodes:
                terms = [(x_name(v, i, j, t), 1.0) for j in nodes] + [(x_name(v, k, i, t), -1.0) for k in nodes]
                model.row(f"C3_v{v}_i{i}_t{t}", terms, "=", 0.0)
            for i in nodes:
                for j in nodes:
                    terms = [(y_name(v, prod.id, i, j, t), prod.weight) for prod in products]
                    terms.append((x_name(v, i, j, t), -veh.capacity))
                    model.row(f"C4_v{v}_i{i}_j{j}_t{t}", terms, "<=", 0.0)
            for prod in products:
                p, a = prod.id, prod.weight
                for i in nodes:
                    inflow = [(y_name(v, p, j, i, t), a) for j in nodes]
                    outflow = [(y_name(v, p, i, k, t), -a) for k in nodes]
                    terms = inflow + outflow
                    if i == 0:
                        terms = [(var, -coef) for var, coef in terms]
                    model.row(f"C5_v{v}_p{p}_i{i}_t{t}", terms, ">=", 0.0)

        for prod in products:
            p = prod.id
            for i in nodes:
                terms = [(r_name(p, i, t), -1.0)]
                if t > 1:
                    terms.append((r_name(p, i, t - 1), 1.0))
                for veh in vehicles:
                    terms.extend((y_name(veh.id, p, j, i, t), 1.0) for j in nodes)
                    terms.extend((y_name(veh.id, p, i, k, t), -1.0) for k in nodes)
                rhs = float(demand[p - 1, i - 1, t - 1]) if i else 0.0
                if i == 0 and t == 1:
                    rhs -= float(opening_stock[p - 1])
                model.row(f"C6_p{p}_i{i}_t{t}", terms, "=", rhs)

        for i in customers:
            terms = [(r_name(prod.id, i, t), prod.weight) for prod in products]
            model.row(f"C7_i{i}_t{t}", terms, "<=", float(instance.storage[i - 1]))

        if flow_sec:
            bound = float(instance.n_customers)
            for veh in vehicles:
                v = veh.id
                for i in nodes:
                    for j in nodes:
                        model.row(
                            f"secflow_cap_v{v}_i{i}_j{j}_t{t}",
                            [(g_name(v, i, j, t), 1.0), (x_name(v, i, j, t), -bound)],
                            "<=",
                            0.0,
                        )
                for i in customers:
                    terms = [(g_name(v, j, i, t), 1.0) for j in nodes if j != i]
                    terms += [(g_name(v, i, k, t), -1.0) for k in nodes if k != i]
                    terms += [(x_name(v, j, i, t), -1.0) for j in nodes if j != i]
                    model.row(f"secflow_bal_v{v}_i{i}_t{t}", terms, "=", 0.0)
    return model.problem


def export_lp(instance: Instance, path: str | Path, *, flow_sec: bool = False) -> pulp.LpProblem:
    """Build the model and write it; a ``.mps`` suffix selects MPS, anything else LP."""
    problem = build_lp_model(instance, flow_sec=flow_sec)
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        if target.suffix.lower() == ".mps":
            problem.writeMPS(str(target))
        else:
            problem.writeLP(str(target))
    except OSError as exc:
        raise ValidationError(user_msg=f"Cannot write model file {target}: {exc.strerror or exc}") from exc
    log_info(
        "LP model written",
        component="exact",
        instance_id=instance.name,
        context={"path": str(target), "variables": len(problem.variables()), "constraints": len(problem.constraints)},
    )
    return problem


def assign_solution(problem: pulp.LpProblem, values: Mapping[str, float], tol: float = 1e-6) -> List[str]:
    """Load ``values`` into the model's variables (missing ones at 0) and list what fails.

    The result names unknown variables, variables off their bounds or
    integrality, and violated rows. ``problem.objective.value()`` then
    prices the assignment.
    """
    variables = problem.variablesDict()
    found = [f"unknown variable {name}" for name in values if name not in variables]
    for name, var in variables.items():
        var.varValue = float(values.get(name, 0.0))
    found.extend(name for name, var in variables.items() if not var.valid(tol))
    found.extend(name for name, row in problem.constraints.items() if not row.valid(tol))
    return found


def solution_values(solution: Solution, instance: Instance, *, flow_sec: bool = False) -> Dict[str, float]:
    """Nonzero x, y, r (and g) values of ``solution`` under the naming scheme above."""
    values: Dict[str, float] = {}
    deliveries = solution.plan.deliveries
    shipped = deliveries.sum(axis=1)
    supplier_stock = instance.demand.sum(axis=(1, 2))[:, None] - np.cumsum(shipped, axis=1)

    for period in solution.routing:
        t = period.period
        for vid, assignment in period.assignments.items():
            stops: List[int] = list(assignment.route.stops)
            on_board = deliveries[:, [s - 1 for s in stops], t - 1].sum(axis=1)
            remaining = len(stops)
            for i, j in assignment.route.edges:
                values[x_name(vid, i, j, t)] = 1.0
                for prod in instance.products:
                    load = float(on_board[prod.id - 1])
                    if load:
                        values[y_name(vid, prod.id, i, j, t)] = load
                if flow_sec and remaining:
                    values[g_name(vid, i, j, t)] = float(remaining)
                if j:
                    on_board = on_board - deliveries[:, j - 1, t - 1]
                    remaining -= 1

    for prod in instance.products:
        p = prod.id
        for t in range(1, instance.periods + 1):
            stock = float(supplier_stock[p - 1, t - 1])
            if stock:
                values[r_name(p, 0, t)] = stock
            for i in range(1, instance.n_customers + 1):
                held = float(solution.plan.inventory[p - 1, i - 1, t - 1])
                if held:
                    values[r_name(p, i, t)] = held
    return values


__all__ = [
    "assign_solution",
    "build_lp_model",
    "export_lp",
    "family_counts",
    "family_of",
    "g_name",
    "named_coefficients",
    "r_name",
    "solution_values",
    "x_name",
    "y_name",
]
