from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import EXPANSION_CAP
from .geometry import LATTICE_CAP
from .mixed import ROOT_PRECISION_CAP


@dataclass
class RunConfig:
    """Everything a CLI run depends on.  The seed fixes every random choice."""

    command: str
    inputs: list[str] = field(default_factory=list)
    seed: int = 0
    grid_step: Fraction | None = None  # None: derived from the input denominators
    bbox_cap: int = LATTICE_CAP
    precision_cap: int = ROOT_PRECISION_CAP
    expansion_cap: int = EXPANSION_CAP
    output_format: str = "text"  # "text" | "json"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.output_format not in ("text", "json"):
            raise ValueError("output format must be text or json")
        for name in ("bbox_cap", "precision_cap", "expansion_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.grid_step is not None and (self.grid_step <= 0 or self.grid_step.numerator != 1):
            raise ValueError("grid step must be 1/q for a positive integer q")


@contextmanager
def caps(config: RunConfig):
    """Apply the caps of ``config`` to the library defaults for the duration of a run."""
    from . import chains, geometry, mixed

    saved = (geometry.LATTICE_CAP, chains.EXPANSION_CAP, mixed.ROOT_PRECISION_CAP)
    geometry.LATTICE_CAP = config.bbox_cap
    chains.EXPANSION_CAP = config.expansion_cap
    mixed.ROOT_PRECISION_CAP = config.precision_cap
    try:
        yield config
    finally:
        geometry.LATTICE_CAP, chains.EXPANSION_CAP, mixed.ROOT_PRECISION_CAP = saved
