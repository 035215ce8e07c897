"""Command-line entry points."""
from __future__ import annotations

from mmirp_cli.manage import manage_cli

__all__ = ["manage_cli"]
