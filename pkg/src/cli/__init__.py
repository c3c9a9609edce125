"""
CLI Module - FSW Embedding Toolkit

Run configuration and command implementations behind main.py.
"""

from .run_config import RunConfig, ConfigError, VARIANTS, COMMANDS as COMMAND_NAMES
from .commands import (
    EXIT_OK,
    EXIT_VALIDATION,
    EXIT_PARSE,
    EXIT_SHAPE,
    EXIT_SIZE,
    exit_code_for,
    cmd_embed,
    cmd_distance,
    cmd_sw,
    cmd_validate,
    cmd_bench,
    execute,
)

__all__ = [
    "RunConfig",
    "ConfigError",
    "VARIANTS",
    "COMMAND_NAMES",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "EXIT_PARSE",
    "EXIT_SHAPE",
    "EXIT_SIZE",
    "exit_code_for",
    "cmd_embed",
    "cmd_distance",
    "cmd_sw",
    "cmd_validate",
    "cmd_bench",
    "execute",
]
