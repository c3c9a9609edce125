"""
Embedding Parameters - FSW Embedding Toolkit

The m (direction, frequency) pairs of the embedding, the seed they were
drawn from, and their JSON form:

    {"d": 3, "m": 21, "seed": 7, "directions": [[...], ...], "frequencies": [...]}

`directions` and `frequencies` may be omitted on write (they regenerate
from the seed); when present on read they are used verbatim.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from config import PARAMS_NAMESPACE, UNIT_NORM_TOL
from ..errors import FSWError
from .streams import check_seed, draw_directions_and_frequencies


@dataclass(frozen=True, eq=False)
class EmbeddingParams:
    """
    Attributes:
        directions: (m, d) unit vectors v_k
        frequencies: (m,) nonnegative frequencies xi_k
        seed: Seed the pairs were drawn from
    """
    directions: np.ndarray
    frequencies: np.ndarray
    seed: int

    def __post_init__(self):
        directions = np.array(self.directions, dtype=np.float64)
        frequencies = np.array(self.frequencies, dtype=np.float64).reshape(-1)
        if directions.ndim != 2 or directions.shape[0] != frequencies.shape[0]:
            raise FSWError("need an (m, d) direction matrix and m frequencies")
        if directions.shape[0] < 1 or directions.shape[1] < 1:
            raise FSWError("need m >= 1 and d >= 1")
        norms = np.linalg.norm(directions, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOL):
            raise FSWError("every direction must be a unit vector")
        if not np.all(np.isfinite(frequencies)) or np.any(frequencies < 0):
            raise FSWError("frequencies must be finite and nonnegative")
        directions.setflags(write=False)
        frequencies.setflags(write=False)
        object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "frequencies", frequencies)
        object.__setattr__(self, "seed", check_seed(self.seed))

    @property
    def d(self) -> int:
        return self.directions.shape[1]

    @property
    def m(self) -> int:
        return self.directions.shape[0]

    def head(self, k: int) -> "EmbeddingParams":
        """The first k pairs; equals sample_params(d, k, seed) for sampled params."""
        if not 1 <= k <= self.m:
            raise FSWError(f"cannot take {k} of {self.m} parameter pairs")
        return EmbeddingParams(self.directions[:k], self.frequencies[:k], self.seed)

    def to_dict(self, with_arrays: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {"d": self.d, "m": self.m, "seed": self.seed}
        if with_arrays:
            data["directions"] = self.directions.tolist()
            data["frequencies"] = self.frequencies.tolist()
        return data

    def to_json(self, path: Optional[Union[str, Path]] = None, with_arrays: bool = True) -> str:
        text = json.dumps(self.to_dict(with_arrays), indent=2)
        if path is not None:
            Path(path).write_text(text + "\n", encoding="utf-8")
        return text

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EmbeddingParams":
        try:
            d, m, seed = int(data["d"]), int(data["m"]), data["seed"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FSWError(f"parameter file needs integer d, m and seed: {exc}")
        present = [key for key in ("directions", "frequencies") if key in data]
        if len(present) == 1:
            raise FSWError(f"parameter file has {present[0]} but not its partner; give both or neither")
        if present:
            params = cls(np.asarray(data["directions"]), np.asarray(data["frequencies"]), seed)
            if (params.d, params.m) != (d, m):
                raise FSWError(f"arrays have shape d={params.d}, m={params.m}; header says d={d}, m={m}")
            return params
        return sample_params(d, m, seed)

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "EmbeddingParams":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def __repr__(self) -> str:
        return f"EmbeddingParams(d={self.d}, m={self.m}, seed={self.seed})"


def sample_params(d: int, m: int, seed: int) -> EmbeddingParams:
    """
    Draw m i.i.d. pairs (v_k, xi_k) ~ Uniform(S^{d-1}) x D_xi.

    Args:
        d: Ambient dimension
        m: Number of embedding coordinates
        seed: Integer in [0, 2^64)
    """
    if d < 1 or m < 1:
        raise FSWError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    directions, frequencies = draw_directions_and_frequencies(d, m, seed, PARAMS_NAMESPACE)
    return EmbeddingParams(directions, frequencies, seed)


# =============================================================================
# Injectivity thresholds (advisory)
# =============================================================================

def m_multiset(n: int, d: int) -> int:
    """Output dimension that makes the embedding injective on multisets of size <= n."""
    return 2 * n * d + 1


def m_measure(n: int, d: int) -> int:
    """Output dimension that makes the embedding injective on distributions with <= n atoms."""
    return 2 * n * d + 2 * n - 1


def m_measure_multiset(n: int, d: int) -> int:
    """Mass-channel variants: separates multisets of different sizes (same proportions)."""
    return 2 * n * d + 2
