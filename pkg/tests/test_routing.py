from __future__ import annotations

import itertools

import numpy as np
import pytest

from mmirp_core.geometry import travel_cost_matrix
from mmirp_core.models import VehicleSpec
from mmirp_ext.errors import PackingInfeasibleError, SizeLimitError, ValidationError
from mmirp_routing.dump import dump_solution
from mmirp_routing.evaluate import RouteCache, evaluate_solution
from mmirp_routing.packing import assign_vehicles
from mmirp_routing.tsp import nearest_neighbour, route_cost, solve_route, tsp_exact, two_opt_improves
from mmirp_schedule import ScheduleMatrix


@pytest.fixture
def fleet():
    return (
        VehicleSpec(id=1, capacity=300.0, fixed_cost_per_period=(10.0,)),
        VehicleSpec(id=2, capacity=400.0, fixed_cost_per_period=(10.0,)),
    )


def _matrix(pairs: dict[tuple[int, int], float], n_nodes: int) -> np.ndarray:
    matrix = np.zeros((n_nodes, n_nodes))
    for (a, b), value in pairs.items():
        matrix[a, b] = matrix[b, a] = value
    return matrix


def _random_points(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return travel_cost_matrix((10.0, 10.0), [tuple(p) for p in rng.uniform(0, 20, size=(n, 2))])


def test_ffd_opens_second_vehicle(fleet):
    routing = assign_vehicles({1: 250.0, 2: 100.0}, fleet, 1)
    assert routing.assignments[1].route.stops == (1,)
    assert routing.assignments[2].route.stops == (2,)
    assert routing.fixed_cost == 20.0


def test_ffd_empty_period(fleet):
    routing = assign_vehicles({}, fleet, 1)
    assert routing.assignments == {}
    assert routing.fixed_cost == 0.0


def test_ffd_rejects_oversized_load(fleet):
    with pytest.raises(PackingInfeasibleError):
        assign_vehicles({1: 500.0}, fleet, 1)
    with pytest.raises(PackingInfeasibleError):
        assign_vehicles({1: 300.0, 2: 300.0, 3: 300.0}, fleet, 1)


def test_exact_search_packs_what_ffd_strands():
    pair = (
        VehicleSpec(id=1, capacity=100.0, fixed_cost_per_period=(10.0,)),
        VehicleSpec(id=2, capacity=100.0, fixed_cost_per_period=(10.0,)),
    )
    loads = {1: 40.0, 2: 40.0, 3: 30.0, 4: 30.0, 5: 30.0, 6: 30.0}
    routing = assign_vehicles(loads, pair, 1)
    served = sorted(c for a in routing.assignments.values() for c in a.route.stops)
    assert served == [1, 2, 3, 4, 5, 6]
    assert all(a.load <= 100.0 for a in routing.assignments.values())
    assert sorted(a.load for a in routing.assignments.values()) == [100.0, 100.0]
    assert routing.fixed_cost == 20.0


def test_exact_search_still_rejects_unpackable_period():
    pair = (
        VehicleSpec(id=1, capacity=100.0, fixed_cost_per_period=(10.0,)),
        VehicleSpec(id=2, capacity=100.0, fixed_cost_per_period=(10.0,)),
    )
    with pytest.raises(PackingInfeasibleError):
        assign_vehicles({1: 60.0, 2: 60.0, 3: 60.0}, pair, 1)


def test_single_stop_is_out_and_back():
    matrix = _matrix({(0, 1): 7.0}, 2)
    assert solve_route([1], matrix).cost == 14.0
    assert tsp_exact([1], matrix).cost == 14.0
    assert solve_route([], matrix).cost == 0.0


def test_two_stops_tie_in_both_orders():
    matrix = _matrix({(0, 1): 3.0, (0, 2): 4.0, (1, 2): 5.0}, 3)
    assert tsp_exact([1, 2], matrix).cost == 12.0
    assert solve_route([2, 1], matrix).cost == 12.0


@pytest.mark.parametrize("seed", range(6))
def test_exact_tour_matches_brute_force(seed):
    n = 3 + seed % 5
    matrix = _random_points(n, seed)
    stops = list(range(1, n + 1))
    best = min(route_cost(order, matrix) for order in itertools.permutations(stops))
    route = tsp_exact(stops, matrix)
    assert route.cost == pytest.approx(best, abs=1e-9)
    assert sorted(route.stops) == stops
    assert route.nodes[0] == route.nodes[-1] == 0


def test_exact_tour_size_limit():
    matrix = _random_points(19, 3)
    with pytest.raises(SizeLimitError):
        tsp_exact(list(range(1, 20)), matrix)


def test_route_rejects_repeated_or_supplier_stops():
    matrix = _random_points(3, 1)
    with pytest.raises(ValidationError):
        solve_route([1, 1], matrix)
    with pytest.raises(ValidationError):
        tsp_exact([0, 2], matrix)


@pytest.mark.parametrize("seed", range(5))
def test_heuristic_route_is_local_optimum(seed):
    n = 9
    matrix = _random_points(n, 100 + seed)
    stops = list(range(1, n + 1))
    route = solve_route(stops, matrix)
    assert sorted(route.stops) == stops
    assert route.cost >= tsp_exact(stops, matrix).cost - 1e-9
    assert route.cost <= route_cost(nearest_neighbour(stops, matrix), matrix) + 1e-9
    assert not two_opt_improves(route.stops, matrix)


def test_square_corners_route_matches_exact():
    matrix = travel_cost_matrix((5.0, 5.0), [(0.0, 0.0), (0.0, 10.0), (10.0, 10.0), (10.0, 0.0)])
    exact = tsp_exact([1, 2, 3, 4], matrix)
    assert exact.cost == pytest.approx(30.0 + 10.0 * np.sqrt(2.0))
    assert solve_route([3, 1, 4, 2], matrix).cost == pytest.approx(exact.cost)


@pytest.mark.slow
def test_heuristic_gap_over_ten_stop_cases():
    gaps = []
    for seed in range(100):
        matrix = _random_points(10, 1000 + seed)
        stops = list(range(1, 11))
        heuristic, exact = solve_route(stops, matrix).cost, tsp_exact(stops, matrix).cost
        assert heuristic >= exact - 1e-9
        gaps.append((heuristic - exact) / exact)
    assert np.mean(gaps) <= 0.05
    assert max(gaps) <= 0.10


def test_route_cache_reuses_stop_sets():
    matrix = _random_points(5, 4)
    cache = RouteCache(matrix)
    first = cache.route([3, 1, 2])
    assert cache.route([1, 2, 3]) is first
    cache.route([1, 2, 3], exact=True)
    assert (cache.hits, cache.misses, len(cache)) == (1, 2, 2)


def test_explanatory_period_one_uses_two_vehicles(explanatory_instance, explanatory_schedule):
    solution = evaluate_solution(explanatory_schedule, explanatory_instance)
    assert solution.period_fixed_cost(1) == 20.0
    assert solution.routing[0].customers == (1, 2, 4)
    assert solution.cost.total == pytest.approx(solution.cost.fleet_fixed + solution.cost.transport + solution.cost.inventory)
    assert solution.cost.fleet_fixed == pytest.approx(sum(p.fixed_cost for p in solution.routing))


def test_zero_load_visit_is_still_routed(make_instance):
    inst = make_instance([(13.0, 14.0)], [[[0.0, 0.0]]])
    solution = evaluate_solution(ScheduleMatrix.from_rows([[0, 1]]), inst)
    assert solution.cost.transport == pytest.approx(10.0)
    assert solution.cost.fleet_fixed == 10.0
    assert solution.cost.inventory == 0.0


def test_dump_format(make_instance):
    inst = make_instance([(13.0, 14.0)], [[[0.0, 3.0]]])
    text = dump_solution(evaluate_solution(ScheduleMatrix.from_rows([[0, 1]]), inst), name="one")
    assert text.splitlines() == [
        "# one",
        "t=1: -",
        "t=2: v1: 0 1 0",
        "schedule:",
        "  01",
        "fleet_fixed: 10.000000",
        "transport: 10.000000",
        "inventory: 0.000000",
        "total: 20.000000",
    ]
