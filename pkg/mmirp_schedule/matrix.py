"""Binary customer × period chromosome."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from mmirp_core.models import Instance
from mmirp_ext.errors import ValidationError


@dataclass(frozen=True, eq=False)
class ScheduleMatrix:
    """``bits[i, t] == 1`` means customer i+1 is served in period t+1."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.bits)
        if array.ndim != 2:
            raise ValidationError(user_msg=f"Schedule must be two-dimensional, got shape {array.shape}")
        if array.size and not np.isin(array, (0, 1)).all():
            raise ValidationError(user_msg="Schedule entries must be 0 or 1")
        frozen = array.astype(np.uint8, copy=True)
        frozen.setflags(write=False)
        object.__setattr__(self, "bits", frozen)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "ScheduleMatrix":
        return cls(np.array([list(row) for row in rows], dtype=np.uint8))

    @classmethod
    def zeros(cls, instance: Instance) -> "ScheduleMatrix":
        return cls(np.zeros(instance.shape, dtype=np.uint8))

    @classmethod
    def ones(cls, instance: Instance) -> "ScheduleMatrix":
        return cls(np.ones(instance.shape, dtype=np.uint8))

    @classmethod
    def from_text(cls, text: str) -> "ScheduleMatrix":
        rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if any(set(row) - {"0", "1"} for row in rows):
            raise ValidationError(user_msg="Schedule text rows may only contain 0 and 1")
        if len({len(row) for row in rows}) > 1:
            raise ValidationError(user_msg="Schedule text rows differ in length")
        return cls(np.array([[int(ch) for ch in row] for row in rows], dtype=np.uint8).reshape(len(rows), -1))

    def to_text(self) -> str:
        return "\n".join("".join(str(int(b)) for b in row) for row in self.bits)

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape  # type: ignore[return-value]

    @property
    def key(self) -> bytes:
        """Row-major bytes; sorts schedules lexicographically by bits."""
        return self.bits.tobytes()

    def with_bit(self, customer_pos: int, period_pos: int) -> "ScheduleMatrix":
        bits = self.bits.copy()
        bits[customer_pos, period_pos] = 1
        return ScheduleMatrix(bits)

    def matches(self, instance: Instance) -> bool:
        return self.shape == instance.shape

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScheduleMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.shape, self.key))

    def __repr__(self) -> str:
        return f"ScheduleMatrix({self.to_text()!r})"


__all__ = ["ScheduleMatrix"]
