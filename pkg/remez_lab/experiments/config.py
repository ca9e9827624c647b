"""
Experiment configuration.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from remez_lab.config import DEFAULT_RESTARTS, DEFAULT_SAMPLES_PER_AXIS, DEFAULT_TORUS_TOL, enumeration_cap
from remez_lab.exceptions import ConfigurationError
from remez_lab.multipliers.certificate import MAX_CERTIFIED_DEGREE, MAX_CERTIFIED_K
from remez_lab.polynomials.sampling import SCHEMES

logger = logging.getLogger(__name__)

SUITES = (
    "moment-system",
    "measure",
    "dk-bound",
    "transfer",
    "decomposition",
    "property-b",
    "selector",
    "remez-ratio",
    "bh-ratio",
    "prime-certificate",
    "composite-findings",
    "k2-sanity",
    "roundtrip",
)

# suites whose trials enumerate Omega_2K^n
SELECTOR_SUITES = ("selector", "remez-ratio")
# suites that build the moment system D_K
MOMENT_SUITES = ("moment-system", "measure", "remez-ratio")


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    suite: str
    n_values: List[int] = Field(default_factory=lambda: [1, 2, 3, 4])
    d_values: List[int] = Field(default_factory=lambda: [2])
    K_values: List[int] = Field(default_factory=lambda: [3])
    trials: int = Field(default=50, ge=0)
    seed: int = Field(default=42, ge=0)
    scheme: str = "dense-gaussian"
    max_terms: Optional[int] = Field(default=None, ge=1)
    cap: Optional[int] = Field(default=None, ge=1)
    rtol: float = Field(default=1e-9, gt=0)
    restarts: int = Field(default=DEFAULT_RESTARTS, ge=0)
    samples_per_axis: int = Field(default=DEFAULT_SAMPLES_PER_AXIS, ge=1)
    torus_tol: float = Field(default=DEFAULT_TORUS_TOL, gt=0)
    growth_factor: float = Field(default=1.10, ge=1.0)
    precision: str = "double"
    workers: int = Field(default=4, ge=1)
    output: Optional[str] = None
    csv: Optional[str] = None

    @model_validator(mode="after")
    def check_ranges(self) -> "ExperimentConfig":
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITES)}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {', '.join(SCHEMES)}")
        if self.precision not in ("double", "extended"):
            raise ValueError(f"precision must be 'double' or 'extended', got {self.precision!r}")
        for name in ("n_values", "d_values", "K_values"):
            values = getattr(self, name)
            if not values:
                raise ValueError(f"{name} must be nonempty")
            if min(values) < 0:
                raise ValueError(f"{name} must hold nonnegative integers")
        if min(self.K_values) < 2:
            raise ValueError("K_values must be at least 2")
        if self.suite in MOMENT_SUITES and min(self.K_values) < 3:
            raise ValueError(f"suite {self.suite} needs K >= 3")
        if self.suite == "remez-ratio":
            if max(self.d_values) > MAX_CERTIFIED_DEGREE or max(self.K_values) > MAX_CERTIFIED_K:
                raise ValueError(
                    f"certified constants exist for d <= {MAX_CERTIFIED_DEGREE} and K <= {MAX_CERTIFIED_K}"
                )
        if self.suite in SELECTOR_SUITES:
            limit = self.effective_cap
            worst = (2 * max(self.K_values)) ** max(self.n_values)
            if worst > limit:
                raise ValueError(f"(2K)^n = {worst} for the largest K and n exceeds the enumeration cap {limit}")
        return self

    @property
    def effective_cap(self) -> int:
        return self.cap if self.cap is not None else enumeration_cap()


def load_config(path: Union[str, Path], **overrides) -> ExperimentConfig:
    """Read a JSON config file; non-None keyword overrides replace file values."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigurationError(f"Failed to load config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: the config must be a JSON object")
    data.update({k: v for k, v in overrides.items() if v is not None})
    config = build_config(data, source=str(path))
    logger.info("Loaded config %s (suite=%s)", path, config.suite)
    return config


def build_config(data: dict, source: str = "<config>") -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<config>"
        raise ConfigurationError(f"{source}: {where}: {first['msg']}") from e
