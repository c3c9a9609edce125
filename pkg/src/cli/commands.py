"""
Command Implementations - FSW Embedding Toolkit

EXIT CODES:
===========
    0  success
    1  validation failure (some check did not pass)
    2  parse error (malformed CSV, invalid weights, flag out of range)
    3  shape error (dimension mismatch between inputs or parameters)
    4  size error (input too large for the exact solver)

Results go to standard output (or --out); tagged messages go to standard
error.
"""

import json
import warnings
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from config import DEFAULT_SUITE_SEED, OUTPUT_DIR
from ..embedding import (
    embed,
    embed_measure,
    fresh_seed,
    m_measure_multiset,
    m_multiset,
    sample_params,
    sliced_estimate_from_embeddings,
)
from ..errors import (
    DimensionMismatchError,
    FSWError,
    MeasureError,
    PointCloudParseError,
    SupportTooLargeError,
)
from ..measures import PointCloud, ProbabilityMeasure, read_point_cloud
from ..quantile import wasserstein_1d
from ..transport import sliced_wasserstein_mc, w_infinity_1d, wasserstein_exact
from ..utils import error, info, warn
from ..validation import reports_to_json, run_benchmark, run_suite, scaling_verdict, summary_table
from .run_config import RunConfig

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_SHAPE = 3
EXIT_SIZE = 4


def exit_code_for(exc: Exception) -> int:
    """Exit code of a library error."""
    if isinstance(exc, SupportTooLargeError):
        return EXIT_SIZE
    if isinstance(exc, DimensionMismatchError):
        return EXIT_SHAPE
    return EXIT_PARSE


# =============================================================================
# Helpers
# =============================================================================

def _resolve_seed(config: RunConfig) -> int:
    if config.seed is None:
        config.seed = fresh_seed()
        info(f"seed = {config.seed} (pass --seed {config.seed} to replay)")
    return config.seed


def _read_inputs(config: RunConfig) -> List[PointCloud]:
    clouds = [read_point_cloud(path) for path in config.inputs]
    dims = {cloud.measure.dim for cloud in clouds}
    if len(dims) > 1:
        listing = ", ".join(f"{c.path.name}: d={c.measure.dim}" for c in clouds)
        raise DimensionMismatchError(f"inputs live in different dimensions ({listing})")
    return clouds


def _probability(cloud: PointCloud) -> ProbabilityMeasure:
    if not isinstance(cloud.measure, ProbabilityMeasure):
        raise MeasureError(
            f"{cloud.path}: weights sum to {cloud.measure.mass!r}, not 1; "
            "use a mass variant (--variant mass-reg) for measures of arbitrary mass"
        )
    return cloud.measure


def _emit(text: str, out: Optional[Path]):
    if out is None:
        print(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")


def _default_m(config: RunConfig, clouds: List[PointCloud]) -> int:
    n = max(cloud.measure.size for cloud in clouds)
    d = clouds[0].measure.dim
    return m_multiset(n, d) if config.mass_mode is None else m_measure_multiset(n, d)


def _warn_cardinality(config: RunConfig, clouds: List[PointCloud]):
    sizes = {c.measure.size for c in clouds if c.uniform}
    if config.mass_mode is None and len(sizes) > 1:
        warnings.warn(
            "the basic embedding sees multisets as distributions: multisets with the same "
            "proportions but different sizes embed identically; use --variant mass-reg "
            "to tell them apart"
        )


# =============================================================================
# Commands
# =============================================================================

def cmd_embed(config: RunConfig) -> int:
    """Embed every input with one parameter draw and write JSON."""
    clouds = _read_inputs(config)
    seed = _resolve_seed(config)
    d = clouds[0].measure.dim
    threshold = _default_m(config, clouds)
    m = config.m or threshold
    if m < threshold:
        warnings.warn(f"m={m} is below the injectivity threshold {threshold} for these inputs")
    params = sample_params(d, m, seed)
    _warn_cardinality(config, clouds)

    embeddings = []
    for cloud in clouds:
        if config.mass_mode is None:
            vector = embed(_probability(cloud), params)
        else:
            vector = embed_measure(cloud.measure, params, rho=config.rho, mode=config.mass_mode)
        embeddings.append({
            "input": str(cloud.path),
            "n": cloud.measure.size,
            "mass": cloud.measure.mass,
            "weights": "uniform" if cloud.uniform else "file",
            "coords": vector.coords.tolist(),
        })

    provenance = {"seed": seed, "d": d, "m": m, "variant": config.variant}
    if config.mass_mode is not None:
        provenance["rho"] = config.rho
    document = {"params": provenance, "embeddings": embeddings}
    _emit(json.dumps(document, indent=2, sort_keys=True), config.out)
    info(f"embedded {len(clouds)} input(s), d={d}, m={m}", enabled=config.verbose)
    return EXIT_OK


def cmd_distance(config: RunConfig) -> int:
    """Exact W_p between two inputs; optional plan dump."""
    first, second = (_probability(c) for c in _read_inputs(config))
    if np.isinf(config.p):
        if first.dim != 1:
            raise DimensionMismatchError("exact W_inf is available for d = 1 only")
        distance = w_infinity_1d(first, second)
        if config.plan is not None:
            raise FSWError("--plan needs a finite --p")
    else:
        distance, plan = wasserstein_exact(first, second, config.p)
        if config.plan is not None:
            config.plan.parent.mkdir(parents=True, exist_ok=True)
            plan.to_json(config.plan)
            info(f"plan written to {config.plan}", enabled=config.verbose)
    _emit(f"{distance:.12g}", config.out)
    return EXIT_OK


def cmd_sw(config: RunConfig) -> int:
    """Sliced distance: Monte-Carlo slices, the embedding, or exact in 1-D."""
    clouds = _read_inputs(config)
    first, second = (_probability(c) for c in clouds)

    if config.exact_1d:
        if first.dim != 1:
            raise DimensionMismatchError(f"--exact-1d needs d = 1, inputs have d = {first.dim}")
        _emit(f"{wasserstein_1d(first, second, config.p):.12g}", config.out)
        return EXIT_OK

    seed = _resolve_seed(config)
    if config.fsw:
        m = config.m or _default_m(config, clouds)
        params = sample_params(first.dim, m, seed)
        estimate, std_error = sliced_estimate_from_embeddings(embed(first, params), embed(second, params))
    else:
        estimate, std_error = sliced_wasserstein_mc(first, second, config.L, seed)
    _emit(f"{estimate:.12g} +/- {std_error:.3g}", config.out)
    return EXIT_OK


def cmd_validate(config: RunConfig) -> int:
    """Run the validation suite; exit 1 if any check fails."""
    seed = DEFAULT_SUITE_SEED if config.seed is None else config.seed
    overrides = {}
    if config.bounded_constant is not None:
        overrides["bounded_constant"] = config.bounded_constant
    reports = run_suite(config.checks, seed=seed, preset=config.preset,
                        overrides=overrides, verbose=config.verbose)

    target = config.out or OUTPUT_DIR / "validation_report.json"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(reports_to_json(reports) + "\n", encoding="utf-8")
    if reports:
        print(summary_table(reports).to_string(index=False))
    info(f"report written to {target} (seed {seed}, preset {config.preset})")

    failed = [r.name for r in reports if not r.passed]
    if failed:
        error(f"failed checks: {', '.join(failed)}")
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_bench(config: RunConfig) -> int:
    """Timing table over the (m, N) grid, with a scaling verdict per sweep."""
    kwargs = {"seed": _resolve_seed(config), "verbose": config.verbose}
    if config.d is not None:
        kwargs["d"] = config.d
    table = run_benchmark(**kwargs)
    verdict = scaling_verdict(table)
    print(table.to_string(index=False))
    print()
    print(verdict.to_string(index=False))
    if config.out is not None:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(config.out, index=False)
    for row in verdict.itertuples():
        if not row.passed:
            warn(f"{row.sweep}-doubling ratio {row.median_ratio:.2f} outside [{row.low}, {row.high}]")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "embed": cmd_embed,
    "distance": cmd_distance,
    "sw": cmd_sw,
    "validate": cmd_validate,
    "bench": cmd_bench,
}


def execute(config: RunConfig) -> int:
    """Run one command and map library errors onto exit codes."""
    try:
        return COMMANDS[config.command](config)
    except PointCloudParseError as exc:
        error(f"parse error at {exc.path}:{exc.line}: {exc.reason}")
        return EXIT_PARSE
    except FSWError as exc:
        error(str(exc))
        return exit_code_for(exc)
