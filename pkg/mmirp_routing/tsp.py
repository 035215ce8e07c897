"""Single-vehicle routes: local-search heuristic and Held-Karp oracle.

Stops are customer node ids; node 0 is the supplier and both ends of every
route. The cost matrix is indexed by node id.
"""
from __future__ import annotations

from typing import List, Sequence

import numpy as np

from mmirp_ext import current_config
from mmirp_ext.errors import SizeLimitError, ValidationError
from mmirp_routing.models import Route

_IMPROVEMENT = 1e-12
_OR_OPT_LENGTHS = (1, 2, 3)


def route_cost(stops: Sequence[int], cost_matrix: np.ndarray) -> float:
    if not len(stops):
        return 0.0
    nodes = np.fromiter((0, *stops, 0), dtype=np.intp)
    return float(cost_matrix[nodes[:-1], nodes[1:]].sum())


def _check_stops(stops: Sequence[int], cost_matrix: np.ndarray) -> List[int]:
    tour = [int(s) for s in stops]
    if len(set(tour)) != len(tour):
        raise ValidationError(user_msg=f"Route stops must be distinct: {tour}")
    n_nodes = cost_matrix.shape[0]
    if any(s <= 0 or s >= n_nodes for s in tour):
        raise ValidationError(user_msg=f"Route stops must be customer nodes 1..{n_nodes - 1}: {tour}")
    return tour


def nearest_neighbour(stops: Sequence[int], cost_matrix: np.ndarray, first: int | None = None) -> List[int]:
    """Greedy tour from the supplier; ties go to the lower node id."""
    pending = sorted(int(s) for s in stops)
    tour: List[int] = []
    current = 0
    if first is not None:
        pending.remove(first)
        tour.append(first)
        current = first
    while pending:
        row = cost_matrix[current, pending]
        current = pending.pop(int(np.argmin(row)))
        tour.append(current)
    return tour


def _two_opt_move(tour: List[int], cost_matrix: np.ndarray) -> List[int] | None:
    nodes = [0, *tour, 0]
    n = len(tour)
    for i in range(1, n):
        a, b = nodes[i - 1], nodes[i]
        for j in range(i + 1, n + 1):
            c, d = nodes[j], nodes[j + 1]
            delta = cost_matrix[a, c] + cost_matrix[b, d] - cost_matrix[a, b] - cost_matrix[c, d]
            if delta < -_IMPROVEMENT:
                return tour[: i - 1] + tour[i - 1 : j][::-1] + tour[j:]
    return None


def _or_opt_move(tour: List[int], cost_matrix: np.ndarray) -> List[int] | None:
    n = len(tour)
    for length in _OR_OPT_LENGTHS:
        if length >= n:
            break
        for i in range(n - length + 1):
            segment = tour[i : i + length]
            head, tail = segment[0], segment[-1]
            prev = tour[i - 1] if i else 0
            nxt = tour[i + length] if i + length < n else 0
            gain = cost_matrix[prev, head] + cost_matrix[tail, nxt] - cost_matrix[prev, nxt]
            rest = tour[:i] + tour[i + length :]
            for p in range(len(rest) + 1):
                u = rest[p - 1] if p else 0
                w = rest[p] if p < len(rest) else 0
                forward = cost_matrix[u, head] + cost_matrix[tail, w] - cost_matrix[u, w]
                backward = cost_matrix[u, tail] + cost_matrix[head, w] - cost_matrix[u, w]
                if p != i and forward - gain < -_IMPROVEMENT:
                    return rest[:p] + segment + rest[p:]
                if length > 1 and backward - gain < -_IMPROVEMENT:
                    return rest[:p] + segment[::-1] + rest[p:]
    return None


def local_search(tour: List[int], cost_matrix: np.ndarray) -> List[int]:
    """2-opt then Or-opt, first improvement, restarting after every accepted move."""
    while True:
        moved = _two_opt_move(tour, cost_matrix)
        if moved is None:
            moved = _or_opt_move(tour, cost_matrix)
        if moved is None:
            return tour
        tour = moved


def solve_route(stops: Sequence[int], cost_matrix: np.ndarray, *, restarts: int | None = None) -> Route:
    """Route through ``stops`` improved to a 2-opt and Or-opt local optimum.

    Starts are the nearest-neighbour tours whose first stop is one of the
    ``restarts`` stops closest to the supplier; the first start is the plain
    nearest-neighbour tour, so the result never costs more than it.
    """
    tour = _check_stops(stops, cost_matrix)
    if not tour:
        return Route((), 0.0)
    if len(tour) <= 2:
        return Route(tuple(tour), route_cost(tour, cost_matrix))
    if restarts is None:
        restarts = current_config().ROUTE_RESTARTS
    ordered = sorted(tour)
    firsts = [ordered[k] for k in np.argsort(cost_matrix[0, ordered], kind="stable")[: max(1, restarts)]]

    best: List[int] | None = None
    best_cost = float("inf")
    for first in firsts:
        candidate = local_search(nearest_neighbour(tour, cost_matrix, first=first), cost_matrix)
        cost = route_cost(candidate, cost_matrix)
        if cost < best_cost - _IMPROVEMENT:
            best, best_cost = candidate, cost
    return Route(tuple(best), best_cost)


def tsp_exact(stops: Sequence[int], cost_matrix: np.ndarray, *, max_stops: int | None = None) -> Route:
    """Minimum-cost tour through the supplier and ``stops`` (Held-Karp)."""
    tour = _check_stops(stops, cost_matrix)
    limit = max_stops if max_stops is not None else current_config().TSP_EXACT_MAX_STOPS
    n = len(tour)
    if n > limit:
        raise SizeLimitError(
            user_msg=f"Exact routing supports at most {limit} stops, got {n}",
            safe_context={"stops": n, "limit": limit},
        )
    if n <= 2:
        return Route(tuple(tour), route_cost(tour, cost_matrix))

    nodes = np.asarray(tour, dtype=np.intp)
    inner = cost_matrix[np.ix_(nodes, nodes)]
    full = (1 << n) - 1
    dp = np.full((1 << n, n), np.inf)
    parent = np.full((1 << n, n), -1, dtype=np.intp)
    bits = 1 << np.arange(n)
    dp[bits, np.arange(n)] = cost_matrix[0, nodes]

    for mask in range(1, full + 1):
        members = np.flatnonzero(mask & bits)
        if members.size < 2:
            continue
        prev_masks = mask ^ bits[members]
        # candidates[a, j]: reach member a last, coming from j
        candidates = dp[prev_masks] + inner[:, members].T
        choice = np.argmin(candidates, axis=1)
        dp[mask, members] = candidates[np.arange(members.size), choice]
        parent[mask, members] = choice

    closing = dp[full] + cost_matrix[nodes, 0]
    last = int(np.argmin(closing))
    order: List[int] = []
    mask = full
    while last >= 0:
        order.append(last)
        prev = int(parent[mask, last])
        mask ^= 1 << last
        last = prev
    path = [int(nodes[k]) for k in reversed(order)]
    return Route(tuple(path), route_cost(path, cost_matrix))


def two_opt_improves(stops: Sequence[int], cost_matrix: np.ndarray, tolerance: float = 1e-9) -> bool:
    """True if any single 2-opt move lowers the route cost by more than ``tolerance``."""
    tour = [int(s) for s in stops]
    base = route_cost(tour, cost_matrix)
    n = len(tour)
    for i in range(n):
        for j in range(i + 2, n + 1):
            moved = tour[:i] + tour[i:j][::-1] + tour[j:]
            if route_cost(moved, cost_matrix) < base - tolerance:
                return True
    return False


__all__ = [
    "local_search",
    "nearest_neighbour",
    "route_cost",
    "solve_route",
    "tsp_exact",
    "two_opt_improves",
]
