"""
Validation Module - FSW Embedding Toolkit

Statistical and structural checks of the embedding, desk-scale
experiments, the named validation suite and the timing benchmark.
"""

from .report import CheckReport, reports_to_json, summary_table
from .generators import rng_for, ball_points, random_measure
from .checks import (
    mean_and_error,
    check_expectation_identity,
    check_direction_expectation,
    check_variance_bound,
    check_boundedness,
    check_frequency_decay,
    check_symmetries,
    check_oracle_equivalence,
)
from .experiments import (
    separation_experiment,
    distortion_scan,
    non_blip_demo,
    finite_difference_gradient,
    relative_error,
    gradient_suite,
)
from .suite import CHECKS, check_seed_for, run_suite
from .bench import time_embedding, run_benchmark, scaling_verdict

__all__ = [
    "CheckReport",
    "reports_to_json",
    "summary_table",
    "rng_for",
    "ball_points",
    "random_measure",
    "mean_and_error",
    "check_expectation_identity",
    "check_direction_expectation",
    "check_variance_bound",
    "check_boundedness",
    "check_frequency_decay",
    "check_symmetries",
    "check_oracle_equivalence",
    "separation_experiment",
    "distortion_scan",
    "non_blip_demo",
    "finite_difference_gradient",
    "relative_error",
    "gradient_suite",
    "CHECKS",
    "check_seed_for",
    "run_suite",
    "time_embedding",
    "run_benchmark",
    "scaling_verdict",
]
