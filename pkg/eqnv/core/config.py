# eqnv/core/config.py

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from eqnv.core.errors import ConfigurationError

SEED_ENV_VAR = "EQNV_SEED"
LOG_LEVEL_ENV_VAR = "EQNV_LOG_LEVEL"


@dataclass
class EpsilonSearchConfig:
    """Schedule used wherever a statement holds "for all sufficiently small ε".

    The schedule is 2^-first_exponent, ..., 2^-last_exponent; a property passes
    when it holds from some ε of the schedule onwards.
    """
    first_exponent: int = 1
    last_exponent: int = 10

    def schedule(self) -> List[Fraction]:
        return [Fraction(1, 2 ** k) for k in range(self.first_exponent, self.last_exponent + 1)]


@dataclass
class EnumerationConfig:
    """Limits for lattice point enumeration."""
    max_lattice_points: int = 10 ** 6  # bounding-box size above which enumeration refuses to run


@dataclass
class CompletenessConfig:
    """How fan completeness is established."""
    max_checked_dimension: int = 3  # facet pairing + sample points are checked up to this dimension
    trusted_complete: bool = False  # accept higher dimensional fans as complete without checking


@dataclass
class EngineConfig:
    """Configuration shared by the pipeline and the CLI."""
    epsilon: EpsilonSearchConfig = field(default_factory=EpsilonSearchConfig)
    enumeration: EnumerationConfig = field(default_factory=EnumerationConfig)
    completeness: CompletenessConfig = field(default_factory=CompletenessConfig)
    seed: Optional[int] = None  # reserved; no deterministic path reads it
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.epsilon.first_exponent < 0 or self.epsilon.last_exponent < self.epsilon.first_exponent:
            raise ConfigurationError(
                "Invalid epsilon schedule.",
                {"first_exponent": self.epsilon.first_exponent, "last_exponent": self.epsilon.last_exponent},
            )
        if self.enumeration.max_lattice_points < 1:
            raise ConfigurationError("max_lattice_points must be positive.")
        if self.completeness.max_checked_dimension < 0:
            raise ConfigurationError("max_checked_dimension must be nonnegative.")
        self.log_level = str(self.log_level).upper()
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ConfigurationError("Unknown log level.", {"log_level": self.log_level})

    @classmethod
    def from_env(cls, **overrides) -> "EngineConfig":
        """Builds a config, reading EQNV_SEED and EQNV_LOG_LEVEL when set."""
        seed_raw = os.environ.get(SEED_ENV_VAR)
        seed: Optional[int] = None
        if seed_raw:
            try:
                seed = int(seed_raw)
            except ValueError as e:
                raise ConfigurationError(f"{SEED_ENV_VAR} must be an integer, got {seed_raw!r}") from e
        kwargs = {"seed": seed, "log_level": os.environ.get(LOG_LEVEL_ENV_VAR, "WARNING").upper()}
        kwargs.update(overrides)
        return cls(**kwargs)
