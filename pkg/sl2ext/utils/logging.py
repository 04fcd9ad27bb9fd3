"""Logging setup for the command line entry point."""

from __future__ import annotations

import logging

LEVELS = ("debug", "info", "warning", "error")


def configure_logging(level_name: str) -> int:
    """Configure the root logger once; library modules only create their own loggers."""
    level = getattr(logging, level_name.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("sl2ext").setLevel(level)
    return level
