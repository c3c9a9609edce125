"""
Console messages in the project's tagged one-line style.

Messages go to standard error, so JSON printed on standard output by the
command line stays machine-readable.
"""

import sys


def _emit(tag: str, message: str, enabled: bool = True):
    if enabled:
        print(f"[{tag}] {message}", file=sys.stderr)


def info(message: str, enabled: bool = True):
    _emit("INFO", message, enabled)


def warn(message: str, enabled: bool = True):
    _emit("WARN", message, enabled)


def error(message: str):
    _emit("ERROR", message)
