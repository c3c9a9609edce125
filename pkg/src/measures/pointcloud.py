"""
Point-Cloud CSV I/O - FSW Embedding Toolkit

FILE FORMAT:
============
One row per support point, UTF-8, '.' decimal separator, scientific
notation allowed:

    x1,x2,...,xd[,weight]

The header is mandatory. Without a `weight` column the weights are uniform
(the file is read as a multiset). Parse errors report the 1-based line
number of the offending row, counting the header as line 1.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from config import COORD_PREFIX, WEIGHT_COLUMN, WEIGHT_SUM_TOL
from ..errors import MeasureError, PointCloudParseError
from .discrete import DiscreteMeasure, ProbabilityMeasure, from_multiset

_LINE_IN_MESSAGE = re.compile(r"line (\d+)")


@dataclass(frozen=True)
class PointCloud:
    """
    A parsed CSV file.

    Attributes:
        path: Source file
        measure: Parsed measure (ProbabilityMeasure when weights are uniform
                 or already sum to 1)
        uniform: True when the file has no weight column
    """
    path: Path
    measure: DiscreteMeasure
    uniform: bool


def _check_header(path: Path, columns) -> bool:
    columns = [str(c).strip() for c in columns]
    has_weight = bool(columns) and columns[-1] == WEIGHT_COLUMN
    coords = columns[:-1] if has_weight else columns
    expected = [f"{COORD_PREFIX}{i}" for i in range(1, len(coords) + 1)]
    if not coords or coords != expected:
        raise PointCloudParseError(
            path, 1, f"header must be x1,...,xd[,{WEIGHT_COLUMN}], got {','.join(columns)}"
        )
    return has_weight


def read_point_cloud(path: Union[str, Path]) -> PointCloud:
    """
    Parse a point-cloud CSV file.

    Args:
        path: CSV file in the format described above

    Returns:
        PointCloud with a d x N measure

    Raises:
        PointCloudParseError: malformed header, ragged row, non-numeric or
            non-finite entry, negative weight, or no data rows
    """
    path = Path(path)
    try:
        frame = pd.read_csv(
            path, dtype=str, keep_default_na=False,
            skipinitialspace=True, encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise PointCloudParseError(path, 1, "file is empty")
    except pd.errors.ParserError as exc:
        match = _LINE_IN_MESSAGE.search(str(exc))
        line = int(match.group(1)) if match else 0
        raise PointCloudParseError(path, line, "wrong number of fields")
    except UnicodeDecodeError:
        raise PointCloudParseError(path, 0, "file is not valid UTF-8")

    has_weight = _check_header(path, frame.columns)
    if frame.empty:
        raise PointCloudParseError(path, 2, "no data rows; the empty multiset is not allowed")

    values = frame.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    bad = ~np.isfinite(values.to_numpy(dtype=np.float64))
    if bad.any():
        row = int(np.argmax(bad.any(axis=1)))
        column = frame.columns[int(np.argmax(bad[row]))]
        raise PointCloudParseError(
            path, row + 2, f"non-numeric or non-finite value in column '{column}'"
        )

    data = values.to_numpy(dtype=np.float64)
    if has_weight:
        points, weights = data[:, :-1].T, data[:, -1]
        if np.any(weights < 0):
            row = int(np.argmax(weights < 0))
            raise PointCloudParseError(path, row + 2, "negative weight")
        try:
            if abs(float(np.sum(weights)) - 1.0) <= WEIGHT_SUM_TOL:
                measure = ProbabilityMeasure(points, weights)
            else:
                measure = DiscreteMeasure(points, weights)
        except MeasureError as exc:
            raise PointCloudParseError(path, 2, str(exc))
        return PointCloud(path, measure, uniform=False)

    return PointCloud(path, from_multiset(data.T), uniform=True)


def write_point_cloud(path: Union[str, Path], measure: DiscreteMeasure, with_weights: bool = True):
    """
    Write a measure in the CSV format, with full round-trip precision.

    Args:
        path: Destination file
        measure: Measure to write
        with_weights: Write the weight column (omit it for multisets)
    """
    columns = {f"{COORD_PREFIX}{i + 1}": measure.points[i] for i in range(measure.dim)}
    if with_weights:
        columns[WEIGHT_COLUMN] = measure.weights
    pd.DataFrame(columns).to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
