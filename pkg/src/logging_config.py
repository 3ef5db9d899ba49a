"""Logging setup: structured JSON records by default, plain text on request."""

import logging
import sys

from pythonjsonlogger.json import JsonFormatter

from src.config import settings

_TEXT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_JSON_FIELDS = "%(asctime)s %(levelname)s %(name)s %(message)s"


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """
    Install a single stderr handler on the root logger.

    Args:
        level: Log level name; defaults to ``settings.log_level``
        fmt: ``json`` or ``text``; defaults to ``settings.log_format``
    """
    level = (level or settings.log_level).upper()
    fmt = (fmt or settings.log_format).lower()

    handler = logging.StreamHandler(sys.stderr)
    if fmt == "json":
        handler.setFormatter(JsonFormatter(_JSON_FIELDS, rename_fields={"levelname": "level", "asctime": "time"}))
    else:
        handler.setFormatter(logging.Formatter(_TEXT_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)
