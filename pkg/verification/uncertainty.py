"""
Entropic uncertainty relations

The entropic uncertainty function

    F(r, t) = S(r cos t, r sin t) + S(-r sin t, r cos t) - ln r^2 - ln(pi e)

is nonnegative for every state and does not depend on r. The pairwise,
r-dressed and multimode relations are checked through the same
entropies; every verdict uses passed <=> margin >= -tolerance.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

from ..errors import DimensionError, InvalidParameterError
from ..states.state_schema import GaussianCovarianceState, GroundGaussian, ProductState, WaistGaussian
from ..tomography.config import DEFAULT_CONFIG, TomographyConfig
from ..tomography.entropy import default_t_axis, optical_entropy, ordered_map, symplectic_entropy
from ..transforms.frft import TransformMethod


logger = logging.getLogger(__name__)

LN_PI_E = math.log(math.pi * math.e)
HALF_PI = math.pi / 2


class Inequality(str, Enum):
    """Relations the module can check"""
    UNCERTAINTY_FUNCTION = "uncertainty_function"
    PAIRWISE = "pairwise"
    R_DRESSED = "r_dressed"
    MULTIMODE = "multimode"


@dataclass(frozen=True)
class RelationCheck:
    """lhs >= rhs within tolerance"""
    inequality: Inequality
    lhs: float
    rhs: float
    tolerance: float

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.margin >= -self.tolerance

    def to_dict(self) -> dict:
        return {
            "inequality": self.inequality.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class UncertaintyReport:
    """F(r, t) along an angle axis with its verdict"""
    t_axis: List[float]
    f_values: List[float]
    r: float
    tolerance: float
    state_label: str
    method: str
    inequality: Inequality = Inequality.UNCERTAINTY_FUNCTION
    entropies: Dict[float, float] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.t_axis) != len(self.f_values):
            raise DimensionError(f"{len(self.t_axis)} angles but {len(self.f_values)} values")

    @property
    def min_f(self) -> float:
        return min(self.f_values)

    @property
    def max_f(self) -> float:
        return max(self.f_values)

    @property
    def argmin_t(self) -> float:
        return self.t_axis[self.f_values.index(self.min_f)]

    @property
    def margin(self) -> float:
        return self.min_f

    @property
    def passed(self) -> bool:
        return self.min_f >= -self.tolerance

    def rows(self) -> List[dict]:
        return [{"t": t, "F": f} for t, f in zip(self.t_axis, self.f_values)]

    def to_dict(self) -> dict:
        return {
            "state": self.state_label,
            "inequality": self.inequality.value,
            "r": self.r,
            "method": self.method,
            "t": list(self.t_axis),
            "F": list(self.f_values),
            "min_F": self.min_f,
            "max_F": self.max_f,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def gaussian_uncertainty_function(sigma: float, t: float) -> float:
    """F for the waist-sigma Gaussian: 1/2 ln(1 + ((1 - sigma^4)/(2 sigma^2))^2 sin^2 2t)"""
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    squeeze = (1 - sigma ** 4) / (2 * sigma ** 2)
    return 0.5 * math.log1p(squeeze ** 2 * math.sin(2 * t) ** 2)


def covariance_uncertainty_function(state: GaussianCovarianceState, t: float) -> float:
    """ln 2 + 1/2 ln sigma_XX(t) + 1/2 ln sigma_XX(t + pi/2); the entropy sum minus ln(pi e)"""
    c, s = math.cos(t), math.sin(t)
    return (
        math.log(2)
        + 0.5 * math.log(state.quadrature_variance(c, s))
        + 0.5 * math.log(state.quadrature_variance(-s, c))
    )


def _closed_form_f(state, t: float) -> Optional[float]:
    if isinstance(state, GaussianCovarianceState):
        return covariance_uncertainty_function(state, t)
    if isinstance(state, (GroundGaussian, WaistGaussian)):
        return gaussian_uncertainty_function(state.waist, t)
    return None


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def uncertainty_function(
    state,
    r: float = 1.0,
    t_axis: Optional[Sequence[float]] = None,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> UncertaintyReport:
    """
    F(r, t) over t_axis (default: config.t_points angles on [0, pi)).

    Gaussian families use the closed forms unless config.force_fft is set.
    Numeric entropies are evaluated at t mod pi and shared between the two
    terms of angles pi/2 apart.
    """
    config = config or DEFAULT_CONFIG
    if not r > 0:
        raise InvalidParameterError(f"r must be positive, got {r}")
    t_axis = list(t_axis) if t_axis is not None else default_t_axis(config.t_points)
    tolerance = config.effective_tol_f

    closed = isinstance(state, GaussianCovarianceState) or (
        isinstance(state, (GroundGaussian, WaistGaussian)) and not config.force_fft
    )
    if closed:
        values = [_closed_form_f(state, t) for t in t_axis]
        return UncertaintyReport(
            t_axis=t_axis, f_values=values, r=r, tolerance=tolerance,
            state_label=state.label, method="closed_form",
        )

    pairs = [(t % math.pi, (t + HALF_PI) % math.pi) for t in t_axis]
    angles = sorted({a for pair in pairs for a in pair})
    logger.info(f"🔭 F(r={r:g}, t) for {state.label}: {len(t_axis)} angles, {len(angles)} entropies")

    computed = ordered_map(
        lambda a: symplectic_entropy(state, r * math.cos(a), r * math.sin(a), config, method).value,
        angles,
        config.workers,
    )
    entropies = dict(zip(angles, computed))
    offset = math.log(r ** 2) + LN_PI_E
    values = [entropies[a] + entropies[b] - offset for a, b in pairs]

    report = UncertaintyReport(
        t_axis=t_axis, f_values=values, r=r, tolerance=tolerance,
        state_label=state.label, method="quadrature", entropies=entropies,
    )
    if not report.passed:
        logger.error(f"❌ F reaches {report.min_f:.3g} at t={report.argmin_t:.6g} for {state.label}")
    return report


def check_pairwise(state, t: float, config: Optional[TomographyConfig] = None) -> RelationCheck:
    """S(t) + S(t + pi/2) >= ln(pi e)"""
    config = config or DEFAULT_CONFIG
    lhs = optical_entropy(state, t, config).value + optical_entropy(state, t + HALF_PI, config).value
    return RelationCheck(Inequality.PAIRWISE, lhs=lhs, rhs=LN_PI_E, tolerance=config.effective_tol_f)


def _dressed_sum(state, radius_sq: float, t: float, config: TomographyConfig) -> float:
    s = math.sqrt(radius_sq)
    return (
        symplectic_entropy(state, s * math.cos(t), s * math.sin(t), config).value
        + symplectic_entropy(state, -s * math.sin(t), s * math.cos(t), config).value
        - math.log(radius_sq)
    )


def check_r_dressed(state, mu: float, nu: float, t: float, config: Optional[TomographyConfig] = None) -> RelationCheck:
    """
    S(rho cos t, rho sin t) + S(-rho sin t, rho cos t) - ln(mu^2 + nu^2) >= ln(pi e)
    with rho = sqrt(mu^2 + nu^2).
    """
    config = config or DEFAULT_CONFIG
    radius_sq = mu ** 2 + nu ** 2
    if radius_sq == 0:
        raise InvalidParameterError("(mu, nu) = (0, 0) does not define a quadrature")
    lhs = _dressed_sum(state, radius_sq, t, config)
    return RelationCheck(Inequality.R_DRESSED, lhs=lhs, rhs=LN_PI_E, tolerance=config.effective_tol_f)


def check_multimode(
    state: ProductState,
    mu: Sequence[float],
    nu: Sequence[float],
    t: Sequence[float],
    config: Optional[TomographyConfig] = None,
) -> RelationCheck:
    """Multimode relation: sum over modes of the dressed sums >= N ln(pi e)"""
    config = config or DEFAULT_CONFIG
    n = state.n_modes
    if not (len(mu) == len(nu) == len(t) == n):
        raise DimensionError(f"Product state has {n} modes but got {len(mu)} mu, {len(nu)} nu, {len(t)} t")
    lhs = 0.0
    for mode, m, v, angle in zip(state.modes, mu, nu, t):
        radius_sq = m ** 2 + v ** 2
        if radius_sq == 0:
            raise InvalidParameterError("(mu_k, nu_k) = (0, 0) does not define a quadrature")
        lhs += _dressed_sum(mode, radius_sq, angle, config)
    return RelationCheck(Inequality.MULTIMODE, lhs=lhs, rhs=n * LN_PI_E, tolerance=n * config.effective_tol_f)
