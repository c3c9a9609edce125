"""
Run configuration of one command-line invocation.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from config import DEFAULT_PRESET, DEFAULT_RHO, VALIDATION_PRESETS
from ..embedding import MassMode, check_seed
from ..errors import FSWError

COMMANDS = ("embed", "distance", "sw", "validate", "bench")

# command-line spelling -> mass mode (None = basic embedding)
VARIANTS = {
    "basic": None,
    "mass-plain": MassMode.PLAIN,
    "mass-reg": MassMode.REGULARIZED,
    "mass-homog": MassMode.HOMOGENEOUS,
}

DEFAULT_SLICES = 10_000


class ConfigError(FSWError):
    """A flag value outside its documented range."""


@dataclass
class RunConfig:
    """
    Attributes:
        command: One of embed, distance, sw, validate, bench
        inputs: Point-cloud CSV files
        seed: Seed of every random draw; None draws one and prints it
        m: Embedding dimension; None means 2Nd+1 (2Nd+2 for mass variants)
        d: Ambient dimension (bench only; otherwise read from the inputs)
        L: Slicing directions of the Monte-Carlo estimate
        rho: Mass threshold of the regularized variants
        p: Wasserstein order
        variant: basic, mass-plain, mass-reg or mass-homog
        out: Output file (stdout when None)
        plan: Where to write the optimal plan of `distance`
        exact_1d: `sw` prints the exact 1-D distance instead of estimating
        fsw: `sw` estimates through the embedding instead of slicing
        checks: Validation checks to run; None runs all of them
        preset: Validation sizes
        bounded_constant: Replaces the constant of the boundedness check
        verbose: Progress messages
    """
    command: str
    inputs: List[Path] = field(default_factory=list)
    seed: Optional[int] = None
    m: Optional[int] = None
    d: Optional[int] = None
    L: int = DEFAULT_SLICES
    rho: float = DEFAULT_RHO
    p: float = 2.0
    variant: str = "basic"
    out: Optional[Path] = None
    plan: Optional[Path] = None
    exact_1d: bool = False
    fsw: bool = False
    checks: Optional[List[str]] = None
    preset: str = DEFAULT_PRESET
    bounded_constant: Optional[float] = None
    verbose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        self.inputs = [Path(p) for p in self.inputs]
        if self.seed is not None:
            try:
                self.seed = check_seed(self.seed)
            except FSWError as exc:
                raise ConfigError(str(exc))
        if self.m is not None and self.m < 1:
            raise ConfigError(f"--m must be >= 1, got {self.m}")
        if self.d is not None and self.d < 1:
            raise ConfigError(f"--d must be >= 1, got {self.d}")
        if self.L < 2:
            raise ConfigError(f"--L must be >= 2, got {self.L}")
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ConfigError(f"--rho must be positive, got {self.rho}")
        if not self.p >= 1:
            raise ConfigError(f"--p must lie in [1, inf], got {self.p}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"--variant must be one of {list(VARIANTS)}, got {self.variant!r}")
        if self.preset not in VALIDATION_PRESETS:
            raise ConfigError(f"--preset must be one of {sorted(VALIDATION_PRESETS)}, got {self.preset!r}")
        if self.bounded_constant is not None and not self.bounded_constant > 0:
            raise ConfigError(f"--bounded-constant must be positive, got {self.bounded_constant}")
        if self.out is not None:
            self.out = Path(self.out)
        if self.plan is not None:
            self.plan = Path(self.plan)

        needed = {"embed": 1, "distance": 2, "sw": 2}.get(self.command, 0)
        if len(self.inputs) < needed or (self.command in ("distance", "sw") and len(self.inputs) != 2):
            raise ConfigError(f"`{self.command}` needs {'exactly 2' if needed == 2 else 'at least 1'} input file(s)")

    @property
    def mass_mode(self) -> Optional[MassMode]:
        return VARIANTS[self.variant]
