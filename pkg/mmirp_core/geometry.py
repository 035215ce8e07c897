"""Travel-cost matrix construction."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from mmirp_core.models import Point


def travel_cost_matrix(supplier: Point, customers: Sequence[Point]) -> np.ndarray:
    """Euclidean distances between supplier (node 0) and customers (1..n).

    Distances keep full double precision; nothing is rounded.
    """
    nodes = np.vstack([np.asarray(supplier, dtype=float).reshape(1, 2), np.asarray(customers, dtype=float).reshape(-1, 2)])
    delta = nodes[:, None, :] - nodes[None, :, :]
    matrix = np.sqrt(np.sum(delta * delta, axis=-1))
    np.fill_diagonal(matrix, 0.0)
    return matrix


__all__ = ["travel_cost_matrix"]
