"""
Validation Suite - FSW Embedding Toolkit

Named checks, each run at the sizes of a preset with its own seed derived
from (suite seed, crc32(check name)). Selecting a subset of checks, or
running them in another order, never changes any individual result.
"""

import math
import zlib
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from config import (
    BLIP_DECAY,
    BOUNDEDNESS_CONSTANT,
    DEFAULT_PRESET,
    DEFAULT_SUITE_SEED,
    SIGMA_LEVEL,
    VALIDATION_PRESETS,
)
from ..embedding import derive_seed, m_multiset, sample_params
from ..errors import FSWError
from ..measures import scale_points
from ..utils import info
from .checks import (
    check_boundedness,
    check_direction_expectation,
    check_expectation_identity,
    check_frequency_decay,
    check_oracle_equivalence,
    check_symmetries,
    check_variance_bound,
)
from .experiments import distortion_scan, gradient_suite, non_blip_demo, separation_experiment
from .generators import ball_points, random_measure, rng_for
from .report import CheckReport

Preset = Dict[str, Any]


def check_seed_for(seed: int, name: str) -> int:
    """Seed of check `name` inside a suite run with `seed`."""
    return derive_seed(seed, zlib.crc32(name.encode("utf-8")))


def _pairs(seed: int, preset: Preset, with_line: bool = True):
    """Random uniform multiset pairs in the unit ball; optionally one extra d = 1 pair."""
    pairs = []
    for i in range(preset["pairs"]):
        rng = rng_for(seed, 1000 + i)
        pairs.append((random_measure(rng, preset["dim"], preset["points"], uniform=True),
                      random_measure(rng, preset["dim"], preset["points"], uniform=True)))
    if with_line:
        rng = rng_for(seed, 999)
        pairs.append((random_measure(rng, 1, preset["points"]), random_measure(rng, 1, preset["points"])))
    return pairs


def _combine(name: str, reports: List[CheckReport], sigma_scaled: bool) -> CheckReport:
    """One report out of per-pair reports: passes iff all of them pass."""
    if sigma_scaled:
        scores = [abs(r.statistic - r.bound) / r.std_error if r.std_error > 0 else 0.0 for r in reports]
        bound = SIGMA_LEVEL
    else:
        scores = [r.statistic / r.bound if r.bound > 0 else 0.0 for r in reports]
        bound = 1.0
    return CheckReport(
        name=name,
        statistic=max(scores, default=0.0),
        bound=bound,
        passed=all(r.passed for r in reports),
        samples=sum(r.samples for r in reports),
        details={"instances": [r.to_dict() for r in reports]},
    )


# =============================================================================
# Registered checks
# =============================================================================

def _expectation(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    reports = [check_expectation_identity(mu, nu, preset["samples"], derive_seed(seed, i))
               for i, (mu, nu) in enumerate(_pairs(seed, preset))]
    return _combine("expectation_identity", reports, sigma_scaled=True)


def _direction(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    reports = []
    for i, (mu, nu) in enumerate(_pairs(seed, preset, with_line=False)):
        v = ball_points(rng_for(seed, 2000 + i), mu.dim, 1)[:, 0]
        v = v / np.linalg.norm(v)
        reports.append(check_direction_expectation(mu, nu, v, preset["samples"], derive_seed(seed, i)))
    return _combine("direction_expectation", reports, sigma_scaled=True)


def _variance(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    reports = []
    for i, (mu, nu) in enumerate(_pairs(seed, preset)):
        reports.append(check_variance_bound(mu, nu, preset["samples"], derive_seed(seed, i)))
        reports.append(check_variance_bound(scale_points(mu, 2.0), scale_points(nu, 2.0),
                                            preset["samples"], derive_seed(seed, i)))
    return _combine("variance_bound", reports, sigma_scaled=False)


def _boundedness(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    return check_boundedness(preset["bounded_measures"], preset["bounded_draws"], seed,
                             bound=preset.get("bounded_constant", BOUNDEDNESS_CONSTANT),
                             d=preset["dim"], verbose=verbose)


def _frequency_decay(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    reports = [check_frequency_decay(mu, preset["samples"], derive_seed(seed, i))
               for i, (mu, _) in enumerate(_pairs(seed, preset))]
    return _combine("frequency_decay", reports, sigma_scaled=False)


def _symmetries(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    return check_symmetries(preset["symmetry_measures"], seed, d=preset["dim"])


def _oracle(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    return check_oracle_equivalence(preset["oracle_instances"], seed)


def _separation(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    m_list = sorted(preset["separation_m"])
    table = separation_experiment(preset["dim"], 5, 200, m_list, preset["separation_seeds"],
                                  seed=seed, verbose=verbose)
    last = table.iloc[-1]
    relative = abs(last["mean_distance"] - last["sw_target"]) / last["sw_target"]
    separated = float(table.iloc[0]["separated"])
    converging = len(table) < 3 or table.iloc[-1]["mean_abs_error"] < table.iloc[-2]["mean_abs_error"]
    passed = relative <= preset["separation_tol"] and converging and (m_list[0] != 1 or separated >= 0.99)
    return CheckReport(
        name="separation",
        statistic=float(relative),
        bound=float(preset["separation_tol"]),
        passed=bool(passed),
        samples=len(m_list) * preset["separation_seeds"],
        details={"separated_at_first_m": separated, "converging": bool(converging),
                 "table": table.to_dict(orient="records")},
    )


def _distortion(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    d, n = 2, 5
    pairs = []
    for i in range(preset["distortion_pairs"]):
        rng = rng_for(seed, i)
        pairs.append((random_measure(rng, d, n, uniform=True), random_measure(rng, d, n, uniform=True)))
    params = sample_params(d, m_multiset(n, d), derive_seed(seed, 0))
    low, high = distortion_scan(pairs, params)
    return CheckReport(
        name="distortion",
        statistic=low,
        bound=0.0,
        passed=low > 0,
        samples=len(pairs),
        details={"c_hat": low, "C_hat": high, "distortion": high / low if low > 0 else math.inf},
    )


def _non_blip(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    params = sample_params(1, 16, seed)
    table = non_blip_demo([1.0], 2.0, preset["blip_steps"], params)
    decay = float(table["ratio"].iloc[-1] / table["ratio"].iloc[0])
    return CheckReport(
        name="non_blip",
        statistic=decay,
        bound=BLIP_DECAY,
        passed=decay < BLIP_DECAY,
        samples=len(table),
        details={"ratios": table["ratio"].tolist()},
    )


def _gradient(seed: int, preset: Preset, verbose: bool) -> CheckReport:
    return gradient_suite(preset["grad_instances"], seed, verbose=verbose)


CHECKS: Dict[str, Callable[[int, Preset, bool], CheckReport]] = {
    "expectation_identity": _expectation,
    "direction_expectation": _direction,
    "variance_bound": _variance,
    "boundedness": _boundedness,
    "frequency_decay": _frequency_decay,
    "symmetries": _symmetries,
    "oracle_equivalence": _oracle,
    "separation": _separation,
    "distortion": _distortion,
    "non_blip": _non_blip,
    "gradient": _gradient,
}


def run_suite(names: Optional[Sequence[str]] = None, seed: int = DEFAULT_SUITE_SEED,
              preset: str = DEFAULT_PRESET, overrides: Optional[Preset] = None,
              verbose: bool = False) -> List[CheckReport]:
    """
    Run the selected checks (all of them when `names` is None).

    Args:
        names: Check names from CHECKS; an empty list runs nothing
        seed: Suite seed
        preset: Key of VALIDATION_PRESETS
        overrides: Preset entries to replace (sizes, or "bounded_constant")
        verbose: Progress messages and bars

    Returns:
        One CheckReport per selected check, in selection order
    """
    if preset not in VALIDATION_PRESETS:
        raise FSWError(f"unknown preset {preset!r}; choose from {sorted(VALIDATION_PRESETS)}")
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise FSWError(f"unknown check(s) {unknown}; choose from {list(CHECKS)}")

    sizes = {**VALIDATION_PRESETS[preset], **(overrides or {})}
    reports = []
    for name in names:
        info(f"running {name} ({preset})", enabled=verbose)
        report = CHECKS[name](check_seed_for(seed, name), sizes, verbose)
        info(f"{name}: {'PASS' if report.passed else 'FAIL'}", enabled=verbose)
        reports.append(report)
    return reports
