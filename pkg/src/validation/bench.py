"""
Timing of the embedding over an (m, N) grid.

Embedding one measure costs O(m N d) for projections plus O(m N log N) for
sorting, so doubling m should roughly double the time and doubling N a
little more than double it. Each cell is the median of several repeats.
"""

import time
from typing import Dict, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from config import (
    BENCH_DIM,
    BENCH_FIXED_M,
    BENCH_FIXED_N,
    BENCH_M,
    BENCH_N,
    BENCH_RATIO_BANDS,
    BENCH_REPEATS,
)
from ..embedding import embed, sample_params
from .generators import random_measure, rng_for


def time_embedding(d: int, m: int, n: int, repeats: int, seed: int = 0) -> float:
    """Median wall time in seconds of embed() for one random measure."""
    mu = random_measure(rng_for(seed, n, d), d, n)
    params = sample_params(d, m, seed)
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        embed(mu, params)
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def run_benchmark(d: int = BENCH_DIM,
                  m_grid: Sequence[int] = BENCH_M, n_grid: Sequence[int] = BENCH_N,
                  fixed_m: int = BENCH_FIXED_M, fixed_n: int = BENCH_FIXED_N,
                  repeats: int = BENCH_REPEATS, seed: int = 0, verbose: bool = False) -> pd.DataFrame:
    """
    Two sweeps: m over m_grid at N = fixed_n, then N over n_grid at m = fixed_m.

    Returns:
        Columns sweep, d, m, N, seconds and ratio (time over the previous row
        of the same sweep; the m-doubling and N-doubling ratios for the
        default grids)
    """
    cells = [("m", m, fixed_n) for m in m_grid] + [("N", fixed_m, n) for n in n_grid]
    rows = []
    for sweep, m, n in tqdm(cells, desc="bench", disable=not verbose):
        rows.append({"sweep": sweep, "d": d, "m": m, "N": n,
                     "seconds": time_embedding(d, m, n, repeats, seed)})
    table = pd.DataFrame(rows)
    table["ratio"] = table.groupby("sweep")["seconds"].transform(lambda s: s / s.shift(1))
    return table


def scaling_verdict(table: pd.DataFrame,
                    bands: Dict[str, Tuple[float, float]] = BENCH_RATIO_BANDS) -> pd.DataFrame:
    """
    Compare the doubling ratios of each sweep against its accepted band.

    The median ratio of a sweep is used, so one noisy cell does not decide
    the verdict. Sweeps without any ratio (a single grid point) fail.

    Returns:
        One row per sweep: sweep, median_ratio, low, high, passed
    """
    rows = []
    for sweep, (low, high) in bands.items():
        ratios = table.loc[table["sweep"] == sweep, "ratio"].dropna()
        median = float(ratios.median()) if len(ratios) else float("nan")
        rows.append({"sweep": sweep, "median_ratio": median, "low": low, "high": high,
                     "passed": bool(low <= median <= high)})
    return pd.DataFrame(rows)
