"""
FSW Embedding Toolkit - Command Line
====================================
Fourier sliced-Wasserstein embedding of point clouds and distributions,
with exact and sliced Wasserstein ground truth.

Commands:
1.  **embed**: Embed one or more CSV point clouds with a shared parameter draw.
2.  **distance**: Exact W_p between two point clouds (transport LP).
3.  **sw**: Sliced Wasserstein estimate (Monte-Carlo slices or the embedding).
4.  **validate**: Run the statistical validation suite.
5.  **bench**: Time the embedding over an (m, N) grid.

Usage:
    python main.py embed data/clouds/triangle.csv --seed 7
    python main.py distance data/clouds/triangle.csv data/clouds/triangle_shifted.csv
    python main.py sw data/clouds/line_a.csv data/clouds/line_b.csv --exact-1d
    python main.py validate --preset quick
    python main.py bench

FSW_THREADS caps the number of worker threads used by the embedding.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to path
ROOT = Path(__file__).parent
sys.path.insert(0, str(ROOT))

from config import DEFAULT_PRESET, DEFAULT_RHO, VALIDATION_PRESETS
from src.cli import EXIT_PARSE, VARIANTS, RunConfig, execute
from src.cli.run_config import DEFAULT_SLICES
from src.errors import FSWError
from src.utils import error
from src.validation import CHECKS


def _float(text: str) -> float:
    # accepts "inf" for --p
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsw",
        description="Fourier sliced-Wasserstein embedding toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="seed of every random draw (drawn and printed when omitted)")
    common.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    common.add_argument("--verbose", action="store_true", help="progress messages")

    embedding = argparse.ArgumentParser(add_help=False)
    embedding.add_argument("--m", type=int, default=None, help="embedding dimension (default 2Nd+1)")
    embedding.add_argument("--rho", type=_float, default=DEFAULT_RHO, help="mass threshold of mass variants")
    embedding.add_argument("--variant", choices=list(VARIANTS), default="basic")

    p_embed = sub.add_parser("embed", parents=[common, embedding], help="embed CSV point clouds")
    p_embed.add_argument("inputs", nargs="+", type=Path)

    p_dist = sub.add_parser("distance", parents=[common], help="exact Wasserstein distance")
    p_dist.add_argument("inputs", nargs=2, type=Path)
    p_dist.add_argument("--p", type=_float, default=2.0, help="order in [1, inf]; inf needs d = 1")
    p_dist.add_argument("--plan", type=Path, default=None, help="write the optimal plan as JSON")

    p_sw = sub.add_parser("sw", parents=[common, embedding], help="sliced Wasserstein estimate")
    p_sw.add_argument("inputs", nargs=2, type=Path)
    p_sw.add_argument("--L", type=int, default=DEFAULT_SLICES, help="Monte-Carlo directions")
    p_sw.add_argument("--p", type=_float, default=2.0, help="order for --exact-1d")
    mode = p_sw.add_mutually_exclusive_group()
    mode.add_argument("--fsw", action="store_true", help="estimate through the embedding")
    mode.add_argument("--exact-1d", action="store_true", help="exact distance for d = 1 inputs")

    p_val = sub.add_parser("validate", parents=[common], help="run the validation suite")
    p_val.add_argument("--checks", nargs="*", choices=list(CHECKS), default=None,
                       help="checks to run (all by default; none if given empty)")
    p_val.add_argument("--preset", choices=sorted(VALIDATION_PRESETS), default=DEFAULT_PRESET)
    p_val.add_argument("--bounded-constant", type=_float, default=None,
                       help="replace the constant of the boundedness check")

    p_bench = sub.add_parser("bench", parents=[common], help="time the embedding")
    p_bench.add_argument("--d", type=int, default=None, help="ambient dimension")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    options = {k: v for k, v in vars(args).items() if v is not None or k in ("checks",)}
    try:
        config = RunConfig(**options)
    except FSWError as exc:
        error(str(exc))
        return EXIT_PARSE
    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
