"""
Run configuration for tomograms, entropies and verification.

Precedence: built-in defaults < YAML config file < explicit overrides.
The config file path comes from the `path` argument or the TOMO_CONFIG
variable (environment or .env).
"""

import logging
import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

from ..errors import ParseError


logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "TOMO_CONFIG"
STRICT_TOL_F = 1e-5


class TomographyConfig(BaseModel):
    """Numeric settings shared by the library and the CLI"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    # Grid
    grid_n: int = Field(default=1024, ge=2, description="Minimum number of lattice points")
    grid_halfwidth: float = Field(default=0.0, ge=0, description="Minimum window half-width (0 = automatic)")

    # Guards
    angle_guard: float = Field(default=1e-3, gt=0, description="|sin t| below this uses the marginal limit")
    nu_guard: float = Field(default=1e-6, gt=0, description="|nu| below this uses the homogeneity limit")

    # Tolerances
    tol_f: float = Field(default=1e-4, gt=0, description="Tolerance for inequality verdicts")
    normalization_threshold: float = Field(default=1e-4, gt=0, description="Largest defect an entropy accepts")
    coverage_tolerance: float = Field(default=1e-4, gt=0, description="Largest mass missing from a user window")
    clamp_floor: float = Field(default=1e-14, gt=0, description="Negative round-off clamped to zero")
    zero_floor: float = Field(default=1e-300, gt=0, description="Densities below this count as zero")
    sampled_norm_tolerance: float = Field(default=1e-6, gt=0)

    # Modes
    strict: bool = Field(default=False, description="Halve the grid step, tighten tol_f, coverage errors")
    force_fft: bool = Field(default=False, description="Numeric path even where closed forms exist")
    tamper: bool = Field(default=False, description="Scale densities by 0.9 (negative control)")

    # Sweeps
    workers: int = Field(default=1, ge=1)
    t_points: int = Field(default=256, ge=2)

    @property
    def effective_tol_f(self) -> float:
        return min(self.tol_f, STRICT_TOL_F) if self.strict else self.tol_f

    def with_overrides(self, **overrides: Any) -> "TomographyConfig":
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return TomographyConfig(**data)


DEFAULT_CONFIG = TomographyConfig()


def _read_yaml(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except OSError as e:
        raise ParseError(f"Cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ParseError(f"Invalid YAML in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"Config file {path} must contain a mapping")
    return data


def load_config(path: Optional[str] = None, **overrides: Any) -> TomographyConfig:
    """
    Build a TomographyConfig.

    Args:
        path: YAML file; falls back to TOMO_CONFIG when omitted
        **overrides: Field values taking precedence; None means not given

    Returns:
        Frozen TomographyConfig
    """
    load_dotenv()
    path = path or os.getenv(CONFIG_ENV_VAR)

    data: Dict[str, Any] = {}
    if path:
        data.update(_read_yaml(path))
        logger.info(f"📄 Loaded config from {path}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    return TomographyConfig(**data)
