"""Toolkit-wide typed exceptions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable


@dataclass(eq=False)
class AppError(Exception):
    """Base exception carrying structured context."""

    user_msg: str
    code: str = "APP_ERROR"
    exit_code: int = 1
    detail: str | None = None
    safe_context: Dict[str, Any] | None = None

    def __str__(self) -> str:
        return self.user_msg

    def payload(self, *, include_detail: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "type": self.__class__.__name__,
            "message": self.user_msg,
            "code": self.code,
        }
        if include_detail and self.detail:
            data["detail"] = self.detail
        if self.safe_context:
            data["context"] = _jsonable(self.safe_context)
        return {"error": data}


@dataclass(eq=False)
class ValidationError(AppError):
    code: str = "VALIDATION"
    exit_code: int = 2


@dataclass(eq=False)
class InstanceParseError(AppError):
    """Malformed instance file; `field` names the offending section or key."""

    code: str = "PARSE"
    exit_code: int = 2
    field: str | None = None


@dataclass(eq=False)
class InstanceValidationError(AppError):
    code: str = "INSTANCE_INVALID"
    exit_code: int = 2
    violations: tuple = ()


@dataclass(eq=False)
class InfeasibleDecodeError(AppError):
    code: str = "INFEASIBLE_DECODE"


@dataclass(eq=False)
class InstanceInfeasibleError(AppError):
    code: str = "INSTANCE_INFEASIBLE"
    exit_code: int = 3


@dataclass(eq=False)
class PackingInfeasibleError(AppError):
    code: str = "PACKING_INFEASIBLE"
    exit_code: int = 3


@dataclass(eq=False)
class SizeLimitError(AppError):
    code: str = "SIZE_LIMIT"
    exit_code: int = 4


@dataclass(eq=False)
class DomainError(AppError):
    code: str = "DOMAIN"


@dataclass(eq=False)
class DegeneratePopulationError(AppError):
    code: str = "DEGENERATE_POPULATION"


@dataclass(eq=False)
class DegenerateDataError(AppError):
    code: str = "DEGENERATE_DATA"


@dataclass(eq=False)
class BoundsFileError(AppError):
    code: str = "BOUNDS"
    exit_code: int = 2


def _jsonable(data: Dict[str, Any]) -> Dict[str, Any]:
    cleaned: Dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, dict):
            cleaned[key] = _jsonable(value)
        elif isinstance(value, (str, int, float, bool)) or value is None:
            cleaned[key] = value
        elif isinstance(value, Iterable):
            cleaned[key] = [item if isinstance(item, (str, int, float, bool)) else str(item) for item in value]
        else:
            cleaned[key] = str(value)
    return cleaned


__all__ = [
    "AppError",
    "ValidationError",
    "InstanceParseError",
    "InstanceValidationError",
    "InfeasibleDecodeError",
    "InstanceInfeasibleError",
    "PackingInfeasibleError",
    "SizeLimitError",
    "DomainError",
    "DegeneratePopulationError",
    "DegenerateDataError",
    "BoundsFileError",
]
