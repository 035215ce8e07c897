"""Toolkit configuration classes and helpers."""
from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable

from dotenv import load_dotenv

# Local overrides live in an optional .env next to this file; real runs
# (benchmark hosts, CI) export the variables directly.
load_dotenv(dotenv_path=Path(__file__).resolve().parent / ".env", override=False)


def _bool(value: str | None, default: bool = False) -> bool:
    """Parse environment flags such as "true", "1", "yes"."""
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "t", "yes", "y"}


def _float_pair(value: str | None, default: tuple[float, float]) -> tuple[float, float]:
    """Parse "lo,hi" into a float pair."""
    if not value:
        return default
    parts = [item.strip() for item in value.split(",") if item.strip()]
    if len(parts) != 2:
        return default
    return float(parts[0]), float(parts[1])


def _ints(value: str | None, default: Iterable[int]) -> tuple[int, ...]:
    if not value:
        return tuple(default)
    return tuple(int(item.strip()) for item in value.split(",") if item.strip())


class BaseConfig:
    """Shared configuration defaults used by every environment."""

    APP_NAME = "Invroute"
    VERSION = "0.1.0"

    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
    LOG_FORMAT = os.getenv("LOG_FORMAT", "json").lower()

    # Genetic algorithm defaults; CLI flags override them per run.
    GA_PSIZE = int(os.getenv("GA_PSIZE", "50"))
    GA_CR0 = float(os.getenv("GA_CR0", "0.8"))
    GA_MR0 = float(os.getenv("GA_MR0", "0.08"))
    GA_CR_BOUNDS = _float_pair(os.getenv("GA_CR_BOUNDS"), (0.4, 0.95))
    GA_MR_BOUNDS = _float_pair(os.getenv("GA_MR_BOUNDS"), (0.01, 0.3))
    GA_K_MAX = int(os.getenv("GA_K_MAX", "50"))
    GA_MAX_GENERATIONS = int(os.getenv("GA_MAX_GENERATIONS", "500"))
    GA_SEED = int(os.getenv("GA_SEED", "0"))
    GA_LOG_EVERY = int(os.getenv("GA_LOG_EVERY", "25"))

    ROUTE_RESTARTS = int(os.getenv("ROUTE_RESTARTS", "5"))
    TSP_EXACT_MAX_STOPS = int(os.getenv("TSP_EXACT_MAX_STOPS", "18"))
    ORACLE_MAX_CELLS = int(os.getenv("ORACLE_MAX_CELLS", "20"))
    RANDOM_SCHEDULE_MAX_ATTEMPTS = int(os.getenv("RANDOM_SCHEDULE_MAX_ATTEMPTS", "100"))

    BENCH_SEEDS = _ints(os.getenv("BENCH_SEEDS"), (1, 2, 3))
    BENCH_OUTPUT_DIR = os.getenv("BENCH_OUTPUT_DIR", str(Path.cwd() / "bench-out"))

    CELERY_BROKER_URL = os.getenv("CELERY_BROKER_URL", "memory://")
    CELERY_RESULT_BACKEND = os.getenv("CELERY_RESULT_BACKEND", "cache+memory://")
    CELERY_RESULT_EXPIRES = int(os.getenv("CELERY_RESULT_EXPIRES", "3600"))
    CELERY_TASK_DEFAULT_QUEUE = os.getenv("CELERY_TASK_DEFAULT_QUEUE", "mmirp")
    # Suites run in-process unless a broker is configured explicitly.
    CELERY_TASK_ALWAYS_EAGER = _bool(os.getenv("CELERY_EAGER"), default=True)


class DevConfig(BaseConfig):
    LOG_FORMAT = os.getenv("LOG_FORMAT", "plain").lower()


class ProdConfig(BaseConfig):
    LOG_FORMAT = "json"
    CELERY_TASK_ALWAYS_EAGER = _bool(os.getenv("CELERY_EAGER"), default=False)


class TestingConfig(BaseConfig):
    LOG_LEVEL = "WARNING"
    LOG_FORMAT = "plain"
    CELERY_TASK_ALWAYS_EAGER = True
    GA_LOG_EVERY = 0
