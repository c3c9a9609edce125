"""
Utilities - FSW Embedding Toolkit
"""

from .console import info, warn, error
from .parallel import worker_count, chunk_slices

__all__ = [
    "info",
    "warn",
    "error",
    "worker_count",
    "chunk_slices",
]
