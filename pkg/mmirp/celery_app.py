"""Celery application factory wired to the toolkit configuration."""
from __future__ import annotations

from typing import Any

from celery import Celery

celery = Celery("mmirp")


def make_celery(config: Any | None = None) -> Celery:
    """Configure the global Celery instance against the given config class."""
    if config is None:
        from mmirp_ext import current_config  # dynamic import to avoid circular deps

        config = current_config()

    celery.conf.update(
        broker_url=config.CELERY_BROKER_URL,
        result_backend=config.CELERY_RESULT_BACKEND,
        result_expires=getattr(config, "CELERY_RESULT_EXPIRES", 3600),
        task_default_queue=getattr(config, "CELERY_TASK_DEFAULT_QUEUE", "mmirp"),
        task_acks_late=True,
        task_serializer="json",
        accept_content=["json"],
        result_serializer="json",
        timezone="UTC",
        enable_utc=True,
        task_always_eager=bool(getattr(config, "CELERY_TASK_ALWAYS_EAGER", True)),
        task_eager_propagates=True,
    )
    celery.conf.include = ["mmirp_bench.tasks"]
    return celery


__all__ = ["celery", "make_celery"]


# Workers started with `celery -A mmirp.celery_app:celery worker` need broker
# settings before any task module is imported.
make_celery()
