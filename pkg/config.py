"""
Configuration - FSW Embedding Toolkit

Centralized configuration for all project settings.
Modify this file to change defaults, tolerances and validation sizes.
"""

from pathlib import Path

# =============================================================================
# PATHS
# =============================================================================

PROJECT_ROOT = Path(__file__).parent
DATA_DIR = PROJECT_ROOT / "data"
CLOUDS_DIR = DATA_DIR / "clouds"
OUTPUT_DIR = PROJECT_ROOT / "output"

# =============================================================================
# MEASURES
# =============================================================================

WEIGHT_SUM_TOL = 1e-12     # |sum(w) - 1| allowed for a probability measure
UNIT_NORM_TOL = 1e-10      # |‖v‖ - 1| allowed for a direction
COLLINEAR_TOL = 1e-10      # off-line residual allowed in the collinear shortcut

# Mass threshold of the regularized measure; 0.1 <= rho <= 1 works well
DEFAULT_RHO = 0.5

# CSV point-cloud format
WEIGHT_COLUMN = "weight"
COORD_PREFIX = "x"

# =============================================================================
# EMBEDDING
# =============================================================================

# Coordinates are drawn in fixed blocks, one counter-based stream per block.
STREAM_BLOCK = 256

# Stream namespaces keep embedding parameters and slicing directions apart
PARAMS_NAMESPACE = 0x46535745     # "FSWE"
SLICES_NAMESPACE = 0x534C4943     # "SLIC"

# Coordinates per worker task when FSW_THREADS > 1
EMBED_CHUNK = 512

# Environment variable capping internal parallelism
THREADS_ENV = "FSW_THREADS"

# =============================================================================
# TRANSPORT
# =============================================================================

MAX_EXACT_SUPPORT = 64     # desk-scale guard of the exact solver
MARGINAL_TOL = 1e-9
REDUCED_COST_TOL = 1e-9
PIVOT_TOL = 1e-12

# Directions per vectorized batch in Monte-Carlo slicing
SLICE_BATCH = 4096

# =============================================================================
# VALIDATION
# =============================================================================

SIGMA_LEVEL = 3.0          # every statistical check is a 3-sigma test
BOUNDEDNESS_CONSTANT = 3.0
VARIANCE_CONSTANT = 13.0
SEPARATION_EPS = 1e-6
GRAD_FD_STEP = 1e-7
GRAD_REL_TOL = 1e-5
GRAD_ABS_FLOOR = 1e-8
SYMMETRY_TOL = 1e-10       # permutation, homogeneity, rotation, atom splitting
ORACLE_TOL = 1e-9          # quantile formula vs transport LP vs sort formula
BLIP_DECAY = 0.1           # last ratio of the non-bi-Lipschitz demo vs the first

# Sliced target of the expectation check: pilot directions, then enough
# directions that its standard error stays below a third of the other side.
EXPECTATION_PILOT = 1_000
TARGET_ERROR_RATIO = 1.0 / 3.0

# Suite sizes. "quick" is the default; "full" reproduces the acceptance scale.
VALIDATION_PRESETS = {
    "quick": {
        "pairs": 3,
        "points": 10,
        "dim": 3,
        "samples": 20_000,
        "bounded_measures": 200,
        "bounded_draws": 500,
        "oracle_instances": 100,
        "separation_seeds": 100,
        "separation_m": [1, 100, 2_000],
        "separation_tol": 0.10,
        "symmetry_measures": 30,
        "grad_instances": 20,
        "distortion_pairs": 30,
        "blip_steps": 20,
    },
    "full": {
        "pairs": 10,
        "points": 10,
        "dim": 3,
        "samples": 100_000,
        "bounded_measures": 1_000,
        "bounded_draws": 1_000,
        "oracle_instances": 500,
        "separation_seeds": 100,
        "separation_m": [1, 100, 10_000],
        "separation_tol": 0.05,
        "symmetry_measures": 100,
        "grad_instances": 50,
        "distortion_pairs": 100,
        "blip_steps": 20,
    },
}
DEFAULT_PRESET = "quick"
DEFAULT_SUITE_SEED = 20240229

# =============================================================================
# BENCHMARK
# =============================================================================

BENCH_M = [256, 512, 1024, 2048, 4096]
BENCH_N = [128, 256, 512, 1024, 2048]
BENCH_DIM = 3
BENCH_REPEATS = 5
BENCH_FIXED_M = 1024
BENCH_FIXED_N = 512

# Accepted time ratio per doubling step: (low, high) for each sweep
BENCH_RATIO_BANDS = {"m": (1.6, 2.6), "N": (1.8, 3.0)}
