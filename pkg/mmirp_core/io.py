"""Plain-text instance files.

Layout (UTF-8, tokens separated by whitespace; ``#`` at the start of a line
or after whitespace starts a comment)::

    NAME <instance id>
    N_CUSTOMERS <I>
    N_PERIODS <T>
    N_VEHICLES <V>
    N_PRODUCTS <P>
    GRID <grid size>
    SEED <integer | none>
    SUPPLIER <x> <y>
    PRODUCTS
    <id> <weight>
    VEHICLES
    <id> <capacity> <fixed cost>            # or <f_1> ... <f_T>
    CUSTOMERS
    <id> <x> <y> <storage> <h_1> ... <h_P>
    DEMAND
    <customer> <period> <d_1> ... <d_P>     # one row per customer-period
    EOF

Travel costs are not stored; they are recomputed from the locations.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError

from mmirp_core.geometry import travel_cost_matrix
from mmirp_core.models import CustomerSpec, Instance, ProductSpec, VehicleSpec
from mmirp_core.validation import errors_only, validate_instance
from mmirp_ext.errors import InstanceParseError, InstanceValidationError
from mmirp_ext.logging import log_info

_COMMENT = re.compile(r"(?:^|\s)#.*$")
SECTIONS = ("PRODUCTS", "VEHICLES", "CUSTOMERS", "DEMAND")
_HEADER_KEYS = {
    "NAME": "name",
    "N_CUSTOMERS": "n_customers",
    "N_PERIODS": "n_periods",
    "N_VEHICLES": "n_vehicles",
    "N_PRODUCTS": "n_products",
    "GRID": "grid_size",
    "SEED": "seed",
    "SUPPLIER": "supplier",
}


class InstanceHeader(BaseModel):
    name: str = "instance"
    n_customers: int = Field(ge=0)
    n_periods: int = Field(gt=0)
    n_vehicles: int = Field(ge=0)
    n_products: int = Field(gt=0)
    grid_size: float = Field(default=20.0, gt=0)
    seed: Optional[int] = None
    supplier: tuple[float, float]

    model_config = ConfigDict(extra="forbid")


def _fmt(value: float) -> str:
    return repr(float(value))


def write_instance(path: str | Path, instance: Instance) -> Path:
    """Write ``instance`` to ``path``; floats keep full precision."""
    path = Path(path)
    lines: List[str] = [
        "# Invroute instance file v1",
        f"NAME {instance.name}",
        f"N_CUSTOMERS {instance.n_customers}",
        f"N_PERIODS {instance.periods}",
        f"N_VEHICLES {instance.n_vehicles}",
        f"N_PRODUCTS {instance.n_products}",
        f"GRID {_fmt(instance.grid_size)}",
        f"SEED {instance.seed if instance.seed is not None else 'none'}",
        f"SUPPLIER {_fmt(instance.supplier_location[0])} {_fmt(instance.supplier_location[1])}",
        "PRODUCTS",
    ]
    lines += [f"{p.id} {_fmt(p.weight)}" for p in instance.products]
    lines.append("VEHICLES")
    for v in instance.vehicles:
        costs = v.fixed_cost_per_period[:1] if v.constant_fixed_cost else v.fixed_cost_per_period
        lines.append(" ".join([str(v.id), _fmt(v.capacity), *(_fmt(f) for f in costs)]))
    lines.append("CUSTOMERS")
    for c in instance.customers:
        lines.append(
            " ".join([str(c.id), _fmt(c.location[0]), _fmt(c.location[1]), _fmt(c.storage_capacity), *(_fmt(h) for h in c.holding_cost)])
        )
    lines.append("DEMAND")
    for i in range(instance.n_customers):
        for t in range(instance.periods):
            values = (_fmt(instance.demand[p, i, t]) for p in range(instance.n_products))
            lines.append(" ".join([str(i + 1), str(t + 1), *values]))
    lines.append("EOF")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    log_info("instance written", component="core", instance_id=instance.name, context={"path": str(path)})
    return path


def read_instance(path: str | Path) -> Instance:
    """Parse an instance file, raising on malformed input or invalid data."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_instance(text)


def parse_instance(text: str) -> Instance:
    header_raw: Dict[str, object] = {}
    sections: Dict[str, List[tuple[int, List[str]]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "EOF":
            break
        if len(tokens) == 1 and head.isupper():
            if head not in SECTIONS:
                raise InstanceParseError(user_msg=f"Unknown section '{head}' at line {lineno}", field=head.lower())
            if head in sections:
                raise InstanceParseError(user_msg=f"Duplicate section '{head}' at line {lineno}", field=head.lower())
            current = head
            sections[current] = []
            continue
        if current is None:
            key = _HEADER_KEYS.get(head)
            if key is None:
                raise InstanceParseError(user_msg=f"Unknown header key '{head}' at line {lineno}", field=head.lower())
            if key == "name":
                header_raw[key] = line[len(head):].strip()
            elif key == "supplier":
                header_raw[key] = tokens[1:]
            elif key == "seed":
                header_raw[key] = None if tokens[1].lower() == "none" else tokens[1]
            else:
                header_raw[key] = tokens[1] if len(tokens) > 1 else None
            continue
        sections[current].append((lineno, tokens))

    try:
        header = InstanceHeader.model_validate(header_raw)
    except PydanticValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(loc) for loc in first.get("loc", ())) or "header"
        raise InstanceParseError(user_msg=f"Invalid header field '{field}': {first.get('msg')}", field=field, detail=str(exc)) from exc

    for name in SECTIONS:
        if name not in sections:
            raise InstanceParseError(user_msg=f"Missing section '{name.lower()}'", field=name.lower())

    n_i, n_t, n_v, n_p = header.n_customers, header.n_periods, header.n_vehicles, header.n_products

    products = []
    for lineno, tokens in _rows(sections["PRODUCTS"], "products", 2, n_p):
        products.append(ProductSpec(id=_int(tokens[0], "products.id", lineno), weight=_float(tokens[1], "products.weight", lineno)))

    vehicles = []
    for lineno, tokens in _rows(sections["VEHICLES"], "vehicles", None, n_v):
        if len(tokens) not in (3, 2 + n_t):
            raise InstanceParseError(user_msg=f"vehicles row at line {lineno} needs 1 or {n_t} fixed costs", field="vehicles.fixed_cost")
        costs = [_float(tok, "vehicles.fixed_cost", lineno) for tok in tokens[2:]]
        if len(costs) == 1:
            costs = costs * n_t
        vehicles.append(
            VehicleSpec(id=_int(tokens[0], "vehicles.id", lineno), capacity=_float(tokens[1], "vehicles.capacity", lineno), fixed_cost_per_period=tuple(costs))
        )

    customers = []
    for lineno, tokens in _rows(sections["CUSTOMERS"], "customers", 4 + n_p, n_i):
        customers.append(
            CustomerSpec(
                id=_int(tokens[0], "customers.id", lineno),
                location=(_float(tokens[1], "customers.x", lineno), _float(tokens[2], "customers.y", lineno)),
                storage_capacity=_float(tokens[3], "customers.storage", lineno),
                holding_cost=tuple(_float(tok, "customers.holding_cost", lineno) for tok in tokens[4:]),
            )
        )

    demand = np.full((n_p, n_i, n_t), np.nan)
    for lineno, tokens in _rows(sections["DEMAND"], "demand", 2 + n_p, n_i * n_t):
        i = _int(tokens[0], "demand.customer", lineno)
        t = _int(tokens[1], "demand.period", lineno)
        if not (1 <= i <= n_i and 1 <= t <= n_t):
            raise InstanceParseError(user_msg=f"demand row at line {lineno} references customer {i} period {t} outside dimensions", field="demand")
        if not np.isnan(demand[0, i - 1, t - 1]):
            raise InstanceParseError(user_msg=f"duplicate demand row at line {lineno}", field="demand")
        demand[:, i - 1, t - 1] = [_float(tok, "demand.value", lineno) for tok in tokens[2:]]
    if np.isnan(demand).any():
        raise InstanceParseError(user_msg="demand section does not cover every customer-period", field="demand")

    instance = Instance(
        customers=tuple(customers),
        vehicles=tuple(vehicles),
        products=tuple(products),
        periods=n_t,
        supplier_location=header.supplier,
        demand=demand,
        travel_cost=travel_cost_matrix(header.supplier, [c.location for c in customers]),
        name=header.name,
        grid_size=header.grid_size,
        seed=header.seed,
    )
    problems = errors_only(validate_instance(instance))
    if problems:
        raise InstanceValidationError(
            user_msg=f"Invalid instance: {problems[0].condition}",
            violations=tuple(problems),
            safe_context={"violations": [str(v) for v in problems[:10]]},
        )
    return instance


def instance_io(path: str | Path, instance: Instance | None = None) -> Instance | Path:
    """Write ``instance`` when given, otherwise read from ``path``."""
    if instance is not None:
        return write_instance(path, instance)
    return read_instance(path)


def _rows(rows, field: str, width: int | None, expected: int):
    if len(rows) != expected:
        raise InstanceParseError(user_msg=f"Section '{field}' has {len(rows)} rows, expected {expected}", field=field)
    for lineno, tokens in rows:
        if width is not None and len(tokens) != width:
            raise InstanceParseError(user_msg=f"Section '{field}' row at line {lineno} has {len(tokens)} columns, expected {width}", field=field)
        yield lineno, tokens


def _float(token: str, field: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError as exc:
        raise InstanceParseError(user_msg=f"Field '{field}' at line {lineno} is not a number: {token!r}", field=field) from exc


def _int(token: str, field: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise InstanceParseError(user_msg=f"Field '{field}' at line {lineno} is not an integer: {token!r}", field=field) from exc


__all__ = ["SECTIONS", "InstanceHeader", "write_instance", "read_instance", "parse_instance", "instance_io"]
