"""Celery wiring for distributed benchmark runs."""
from __future__ import annotations
