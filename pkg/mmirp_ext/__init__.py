"""Runtime factory and shared configuration access."""
from __future__ import annotations

import os
from importlib import import_module
from typing import Dict, Type

from config import BaseConfig, DevConfig, ProdConfig, TestingConfig
from mmirp_ext import logging as logging_ext

CONFIG_MAP: Dict[str, Type[BaseConfig]] = {
    "development": DevConfig,
    "dev": DevConfig,
    "production": ProdConfig,
    "prod": ProdConfig,
    "testing": TestingConfig,
    "test": TestingConfig,
}

_active_config: Type[BaseConfig] = BaseConfig


def init_runtime(config_object: str | Type[BaseConfig] | None = None, *, with_celery: bool = True) -> Type[BaseConfig]:
    """Resolve configuration, wire logging and the worker pool.

    Used by the CLI entry point and by the test suite; library calls that
    never go through it fall back to `BaseConfig`.
    """
    global _active_config
    config_cls = _load_config(config_object)
    _active_config = config_cls
    logging_ext.configure_logging(config_cls)
    if with_celery:
        from mmirp.celery_app import make_celery

        make_celery(config_cls)
    return config_cls


def current_config() -> Type[BaseConfig]:
    return _active_config


def _load_config(config_object: str | Type[BaseConfig] | None) -> Type[BaseConfig]:
    if config_object is None:
        env_name = os.getenv("MMIRP_ENV", "development").lower()
        return CONFIG_MAP.get(env_name, DevConfig)
    if isinstance(config_object, str):
        key = config_object.lower()
        if key in CONFIG_MAP:
            return CONFIG_MAP[key]
        module_path, _, attr = config_object.rpartition(".")
        if module_path:
            module = import_module(module_path)
            return getattr(module, attr)
        raise KeyError(f"Unknown config identifier: {config_object}")
    return config_object
