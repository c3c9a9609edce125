"""
Source Module - FSW Embedding Toolkit

Main package containing the measure, quantile, embedding, transport,
validation and command-line modules.
"""

from . import measures
from . import quantile
from . import embedding
from . import transport
from . import validation
from . import cli

__all__ = [
    "measures",
    "quantile",
    "embedding",
    "transport",
    "validation",
    "cli",
]
