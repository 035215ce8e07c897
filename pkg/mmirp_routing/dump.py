"""Plain-text solution dump for golden files and the CLI."""
from __future__ import annotations

from pathlib import Path
from typing import List

from mmirp_ext.logging import log_info
from mmirp_routing.models import Solution


def _money(value: float) -> str:
    return f"{value:.6f}"


def dump_solution(solution: Solution, name: str | None = None) -> str:
    """One line per used vehicle and period, then the schedule and cost lines.

    Example::

        t=1: v1: 0 3 1 0
        t=2: -
    """
    lines: List[str] = []
    if name:
        lines.append(f"# {name}")
    for period in solution.routing:
        if not period.assignments:
            lines.append(f"t={period.period}: -")
            continue
        for vid, assignment in sorted(period.assignments.items()):
            nodes = " ".join(str(n) for n in assignment.route.nodes)
            lines.append(f"t={period.period}: v{vid}: {nodes}")
    lines.append("schedule:")
    lines.extend(f"  {row}" for row in solution.schedule.to_text().splitlines())
    cost = solution.cost
    lines.append(f"fleet_fixed: {_money(cost.fleet_fixed)}")
    lines.append(f"transport: {_money(cost.transport)}")
    lines.append(f"inventory: {_money(cost.inventory)}")
    lines.append(f"total: {_money(cost.total)}")
    return "\n".join(lines) + "\n"


def write_solution(path: str | Path, solution: Solution, name: str | None = None) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dump_solution(solution, name), encoding="utf-8")
    log_info("Solution written", component="routing", context={"path": str(target), "total": solution.total})
    return target


__all__ = ["dump_solution", "write_solution"]
