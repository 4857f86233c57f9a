"""
Shannon entropies of tomograms, in nats.

Gaussian families use 1/2 + 1/2 ln(2 pi sigma_XX); everything else is the
rectangle rule on the tomogram lattice with 0 ln 0 = 0.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
from scipy import special

from ..errors import DimensionError, InvalidParameterError, NormalizationError
from ..states.state_schema import ProductState, WaistGaussian
from ..transforms.frft import TransformMethod
from .config import DEFAULT_CONFIG, TomographyConfig
from .tomogram import (
    Tomogram,
    uses_closed_form,
    optical_parameters,
    optical_tomogram,
    quadrature_moments,
    symplectic_tomogram,
)


logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class EntropyMethod(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class EntropyValue:
    """Entropy with the difference against a half-resolution evaluation"""
    value: float
    quadrature_error_estimate: float
    method: EntropyMethod

    def to_dict(self) -> dict:
        return {"value": self.value, "err_est": self.quadrature_error_estimate, "method": self.method.value}


class ScanAxis(str, Enum):
    ANGLE = "t"
    FRESNEL = "nu"
    SYMPLECTIC = "mu_nu"


@dataclass
class EntropyScan:
    """Entropies over a parameter sweep, in axis order"""
    axis_kind: ScanAxis
    axis: List
    entropies: List[EntropyValue] = field(default_factory=list)

    def __post_init__(self):
        if len(self.axis) != len(self.entropies):
            raise DimensionError(f"Scan axis has {len(self.axis)} points but {len(self.entropies)} entropies")

    def rows(self) -> List[dict]:
        return [
            {"param": _format_param(p), "S": e.value, "err_est": e.quadrature_error_estimate}
            for p, e in zip(self.axis, self.entropies)
        ]

    def to_dict(self) -> dict:
        return {
            "axis": self.axis_kind.value,
            "points": [
                {"param": p if not isinstance(p, tuple) else list(p), **e.to_dict()}
                for p, e in zip(self.axis, self.entropies)
            ],
        }


def _format_param(param):
    if isinstance(param, tuple):
        return " ".join(repr(float(v)) for v in param)
    return param


def ordered_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """map() over a thread pool when workers > 1; results keep input order"""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


# ---------------------------------------------------------------------------
# Core entropies
# ---------------------------------------------------------------------------

def gaussian_entropy(variance: float) -> float:
    """Entropy of a normal density with the given variance"""
    if not variance > 0:
        raise InvalidParameterError(f"Variance must be positive, got {variance}")
    return 0.5 + 0.5 * math.log(2 * math.pi * variance)


def waist_gaussian_entropy(sigma: float, r: float, t: float) -> float:
    """1/2 - ln[sigma / (r sqrt(pi (sin^2 t + sigma^4 cos^2 t)))]"""
    spread = math.sin(t) ** 2 + sigma ** 4 * math.cos(t) ** 2
    return 0.5 - math.log(sigma / (r * math.sqrt(math.pi * spread)))


def _lattice_entropy(density: np.ndarray, step: float, zero_floor: float) -> float:
    terms = np.where(density > zero_floor, special.entr(density), 0.0)
    return float(np.sum(terms) * step)


def shannon_entropy(tom: Tomogram, config: Optional[TomographyConfig] = None) -> EntropyValue:
    """
    -sum w ln w * step on the tomogram lattice.

    The error estimate is the difference against every other lattice
    point at twice the step.

    Raises:
        NormalizationError: normalization defect above the threshold
    """
    config = config or DEFAULT_CONFIG
    if tom.normalization_defect > config.normalization_threshold:
        raise NormalizationError(
            f"Tomogram normalization defect {tom.normalization_defect:.3g} exceeds "
            f"{config.normalization_threshold:g}; entropy refused"
        )
    full = _lattice_entropy(tom.density, tom.grid.step, config.zero_floor)
    half = _lattice_entropy(tom.density[::2], 2 * tom.grid.step, config.zero_floor)
    return EntropyValue(value=full, quadrature_error_estimate=abs(full - half), method=EntropyMethod.QUADRATURE)


def discrete_entropy(probabilities: Sequence[float], tolerance: float = 1e-9) -> float:
    """Shannon entropy of a probability vector with 0 ln 0 = 0"""
    p = np.asarray(probabilities, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DimensionError("Expected a non-empty probability vector")
    if np.any(p < 0) or abs(p.sum() - 1.0) > tolerance:
        raise InvalidParameterError("Probabilities must be nonnegative and sum to 1")
    return float(np.sum(special.entr(p)))


def _closed_form(state, mu: float, nu: float) -> EntropyValue:
    variance = quadrature_moments(state, mu, nu)[1]
    return EntropyValue(value=gaussian_entropy(variance), quadrature_error_estimate=0.0, method=EntropyMethod.CLOSED_FORM)


def symplectic_entropy(
    state,
    mu: float,
    nu: float,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> EntropyValue:
    """S(mu, nu) of a one-mode state"""
    config = config or DEFAULT_CONFIG
    if isinstance(state, ProductState):
        raise InvalidParameterError("Product states take per-mode parameters; use product_entropy")
    if mu == 0 and nu == 0:
        raise InvalidParameterError("(mu, nu) = (0, 0) does not define a quadrature")
    if uses_closed_form(state, config):
        return _closed_form(state, mu, nu)
    return shannon_entropy(symplectic_tomogram(state, mu, nu, config=config, method=method), config)


def optical_entropy(
    state,
    t: float,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> EntropyValue:
    """S(t) = S(cos t, sin t)"""
    config = config or DEFAULT_CONFIG
    if uses_closed_form(state, config):
        mu, nu = optical_parameters(t, config.angle_guard)
        if isinstance(state, WaistGaussian):
            value = waist_gaussian_entropy(state.sigma, 1.0, math.atan2(nu, mu))
            return EntropyValue(value=value, quadrature_error_estimate=0.0, method=EntropyMethod.CLOSED_FORM)
        return _closed_form(state, mu, nu)
    return shannon_entropy(optical_tomogram(state, t, config=config, method=method), config)


def fresnel_entropy(
    state,
    nu: float,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> EntropyValue:
    """S_F(nu) = S(1, nu)"""
    return symplectic_entropy(state, 1.0, nu, config=config, method=method)


def position_momentum_entropies(state, config: Optional[TomographyConfig] = None) -> Tuple[EntropyValue, EntropyValue]:
    """(S_x, S_p) from the tomograms at (1, 0) and (0, 1)"""
    return symplectic_entropy(state, 1.0, 0.0, config), symplectic_entropy(state, 0.0, 1.0, config)


def additivity_check(
    state,
    mu: float,
    nu: float,
    lam: float,
    config: Optional[TomographyConfig] = None,
) -> float:
    """Residual |S(lam mu, lam nu) - S(mu, nu) - ln|lam||"""
    if lam == 0:
        raise InvalidParameterError("Scaling factor must be nonzero")
    base = symplectic_entropy(state, mu, nu, config).value
    scaled = symplectic_entropy(state, lam * mu, lam * nu, config).value
    return abs(scaled - base - math.log(abs(lam)))


# ---------------------------------------------------------------------------
# Multimode
# ---------------------------------------------------------------------------

def product_entropy(
    state: ProductState,
    mu: Sequence[float],
    nu: Sequence[float],
    config: Optional[TomographyConfig] = None,
) -> EntropyValue:
    """Entropy of a product-state tomogram: the sum of the per-mode entropies"""
    if len(mu) != state.n_modes or len(nu) != state.n_modes:
        raise DimensionError(f"Product state has {state.n_modes} modes but got {len(mu)} mu and {len(nu)} nu")
    parts = [symplectic_entropy(mode, m, v, config) for mode, m, v in zip(state.modes, mu, nu)]
    method = (
        EntropyMethod.CLOSED_FORM
        if all(p.method == EntropyMethod.CLOSED_FORM for p in parts)
        else EntropyMethod.QUADRATURE
    )
    return EntropyValue(
        value=sum(p.value for p in parts),
        quadrature_error_estimate=sum(p.quadrature_error_estimate for p in parts),
        method=method,
    )


def multimode_ground_entropy(mu: Sequence[float], nu: Sequence[float]) -> float:
    """
    Entropy of the N-mode oscillator ground-state tomogram,
    (N/2) ln pi + N/2 + 1/2 sum_k ln(mu_k^2 + nu_k^2).
    """
    if len(mu) != len(nu):
        raise DimensionError(f"Got {len(mu)} mu and {len(nu)} nu")
    radii = [m ** 2 + v ** 2 for m, v in zip(mu, nu)]
    if any(r == 0 for r in radii):
        raise InvalidParameterError("(mu_k, nu_k) = (0, 0) does not define a quadrature")
    n = len(radii)
    return 0.5 * n * math.log(math.pi) + 0.5 * n + 0.5 * sum(math.log(r) for r in radii)


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def default_t_axis(points: int) -> List[float]:
    """Uniform angles on [0, pi)"""
    return [math.pi * k / points for k in range(points)]


def fresnel_axis(nu_max: float, points: int) -> List[float]:
    """Uniform nu values on [0, nu_max], both ends included"""
    if points < 2:
        raise InvalidParameterError(f"A Fresnel axis needs at least 2 points, got {points}")
    return [float(v) for v in np.linspace(0.0, nu_max, points)]


def entropy_scan(
    state,
    axis: Sequence,
    axis_kind: ScanAxis = ScanAxis.ANGLE,
    config: Optional[TomographyConfig] = None,
) -> EntropyScan:
    """
    Entropies along an angle, Fresnel or (mu, nu) axis.

    Runs on config.workers threads; the result follows the axis order.
    """
    config = config or DEFAULT_CONFIG
    axis = list(axis)

    if axis_kind == ScanAxis.ANGLE:
        evaluate = lambda t: optical_entropy(state, t, config)
    elif axis_kind == ScanAxis.FRESNEL:
        evaluate = lambda nu: fresnel_entropy(state, nu, config)
    else:
        axis = [tuple(p) for p in axis]
        evaluate = lambda p: symplectic_entropy(state, p[0], p[1], config)

    logger.info(f"📈 Entropy scan over {len(axis)} {axis_kind.value} points for {state.label}")
    return EntropyScan(axis_kind=axis_kind, axis=axis, entropies=ordered_map(evaluate, axis, config.workers))
