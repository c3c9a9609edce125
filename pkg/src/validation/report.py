"""
Check reports and their machine-readable form.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import pandas as pd


def _finite_or_none(value: float):
    return value if value is None or math.isfinite(value) else None


@dataclass
class CheckReport:
    """
    Outcome of one verification check.

    Attributes:
        name: Check identifier
        statistic: Measured quantity (the left-hand side of the check's inequality)
        bound: Bound or target it is compared with
        std_error: Standard error of the statistic (0 if deterministic)
        passed: Whether the inequality holds
        samples: Number of random draws behind the statistic
        details: Check-specific extras (per-instance values, counts)
    """
    name: str
    statistic: float
    bound: float
    std_error: float = 0.0
    passed: bool = False
    samples: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "statistic": _finite_or_none(float(self.statistic)),
            "bound": _finite_or_none(float(self.bound)),
            "std_error": _finite_or_none(float(self.std_error)),
            "passed": bool(self.passed),
            "samples": int(self.samples),
            "details": self.details,
        }


def reports_to_json(reports: List[CheckReport]) -> str:
    """JSON array of reports."""
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True, default=float)


def summary_table(reports: List[CheckReport]) -> pd.DataFrame:
    """One row per check, for the human-readable summary."""
    columns = ["name", "statistic", "bound", "std_error", "samples", "passed"]
    rows = [{c: getattr(r, c) for c in columns} for r in reports]
    return pd.DataFrame(rows, columns=columns)
