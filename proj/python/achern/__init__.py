"""Exact arithmetic Chern connection computations."""

import json

from ._core import (
    AchernError,
    ConfigError,
    fermat_quotient,
    frobenius,
    legendre,
    rational_reconstruct,
)
from . import _core

__all__ = [
    "AchernError",
    "ConfigError",
    "fermat_quotient",
    "frobenius",
    "legendre",
    "rational_reconstruct",
    "render",
    "run",
]


def run(config):
    """Run a config (dict or JSON text). Returns (exit_code, report dict)."""
    text = config if isinstance(config, str) else json.dumps(config)
    code, report = _core.run_config(text)
    return code, json.loads(report)


def render(report, fmt="json"):
    text = report if isinstance(report, str) else json.dumps(report)
    return _core.render(text, fmt)
