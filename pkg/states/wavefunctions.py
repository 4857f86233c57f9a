"""
Wavefunction sampling and exactly known moments of the state catalog.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np

from ..errors import DimensionError, InvalidParameterError, InvariantViolationError
from ..transforms.frft import TransformResult, conjugate_grid, fourier_transform, inverse_fourier_transform
from .state_schema import (
    GaussianCovarianceState,
    Grid,
    GroundGaussian,
    MixedState,
    Sampled,
    Soliton,
    SqueezedCorrelated,
    WaistGaussian,
)


logger = logging.getLogger(__name__)

GAUSSIAN_TYPES = (GroundGaussian, WaistGaussian, SqueezedCorrelated, GaussianCovarianceState)


def evaluate_wavefunction(state, grid: Grid) -> TransformResult:
    """
    Sample a pure state on grid.

    Sampled states are returned as stored and must be requested on their
    own grid.
    """
    if isinstance(state, Sampled):
        if not grid.matches(state.grid):
            raise DimensionError("Sampled state requested on a grid different from its own")
        return TransformResult.from_values(state.grid, np.array(state.amplitudes))
    if not hasattr(state, "wavefunction"):
        raise InvalidParameterError(f"{type(state).__name__} has no wavefunction")
    return TransformResult.from_values(grid, state.wavefunction(grid.points))


@dataclass(frozen=True)
class Moments:
    """First and second phase-space moments; cov_qp is the symmetrized covariance"""
    mean_q: float
    mean_p: float
    var_q: float
    var_p: float
    cov_qp: float

    @property
    def uncertainty_product(self) -> float:
        return self.var_q * self.var_p

    @property
    def correlation(self) -> float:
        return self.cov_qp / np.sqrt(self.var_q * self.var_p)

    def to_dict(self) -> dict:
        return asdict(self)


def _sampled_moments(state: Sampled) -> Moments:
    grid = state.grid
    psi = np.asarray(state.amplitudes)
    x = grid.points
    density = np.abs(psi) ** 2 * grid.step
    mass = density.sum()
    mean_q = float(np.sum(x * density) / mass)
    var_q = float(np.sum((x - mean_q) ** 2 * density) / mass)

    spectrum = fourier_transform(psi, grid)
    p = spectrum.grid.points
    p_density = np.abs(spectrum.values) ** 2 * spectrum.grid.step
    mean_p = float(np.sum(p * p_density) / mass)
    var_p = float(np.sum((p - mean_p) ** 2 * p_density) / mass)

    # spectral derivative; <(qp + pq)/2> = Re <psi| q (-i d/dx) |psi>
    derivative = inverse_fourier_transform(1j * p * spectrum.values, spectrum.grid, grid).values
    qp = float(np.real(np.sum(np.conj(psi) * x * (-1j) * derivative) * grid.step) / mass)
    return Moments(mean_q, mean_p, var_q, var_p, qp - mean_q * mean_p)


def phase_space_moments(state) -> Moments:
    """Means, variances and covariance of position and momentum"""
    if isinstance(state, GroundGaussian):
        return Moments(0.0, 0.0, 0.5, 0.5, 0.0)
    if isinstance(state, WaistGaussian):
        return Moments(0.0, 0.0, state.sigma ** 2 / 2, 1.0 / (2 * state.sigma ** 2), 0.0)
    if isinstance(state, SqueezedCorrelated):
        mean_q = state.b_re / (2 * state.a1)
        return Moments(
            mean_q=mean_q,
            mean_p=state.b_im - 2 * state.a2 * mean_q,
            var_q=1.0 / (4 * state.a1),
            var_p=abs(state.a) ** 2 / state.a1,
            cov_qp=-state.a2 / (2 * state.a1),
        )
    if isinstance(state, Soliton):
        return Moments(0.0, 0.0, np.pi ** 2 * state.l_z ** 2 / 12, 1.0 / (3 * state.l_z ** 2), 0.0)
    if isinstance(state, GaussianCovarianceState):
        return Moments(0.0, 0.0, state.sigma_qq, state.sigma_pp, state.sigma_qp)
    if isinstance(state, Sampled):
        return _sampled_moments(state)
    if isinstance(state, MixedState):
        parts = [(c.weight, phase_space_moments(c.state)) for c in state.components]
        mean_q = sum(w * m.mean_q for w, m in parts)
        mean_p = sum(w * m.mean_p for w, m in parts)
        qq = sum(w * (m.var_q + m.mean_q ** 2) for w, m in parts)
        pp = sum(w * (m.var_p + m.mean_p ** 2) for w, m in parts)
        qp = sum(w * (m.cov_qp + m.mean_q * m.mean_p) for w, m in parts)
        return Moments(mean_q, mean_p, qq - mean_q ** 2, pp - mean_p ** 2, qp - mean_q * mean_p)
    raise InvalidParameterError(f"No moments for {type(state).__name__}")


def position_variance(state) -> float:
    return phase_space_moments(state).var_q


def momentum_variance(state) -> float:
    return phase_space_moments(state).var_p


def correlation_coefficient(state) -> float:
    """R = sigma_qp / sqrt(sigma_qq sigma_pp); |R| < 1 for physical states"""
    r = phase_space_moments(state).correlation
    if not abs(r) < 1:
        raise InvariantViolationError(f"Correlation coefficient {r:.12g} has |R| >= 1")
    return float(r)


def marginal_entropies_closed_form(state) -> Tuple[float, float]:
    """
    Exact position and momentum entropies (S_x, S_p) in nats.

    Gaussian states give 1/2 ln(2 pi e sigma^2) per axis. The soliton's
    sech^2 marginals give S_x = ln(l_z/2) + 2 and S_p = 2 - ln(pi l_z).
    """
    if isinstance(state, GAUSSIAN_TYPES):
        m = phase_space_moments(state)
        return (
            0.5 * np.log(2 * np.pi * np.e * m.var_q),
            0.5 * np.log(2 * np.pi * np.e * m.var_p),
        )
    if isinstance(state, Soliton):
        return np.log(state.l_z / 2) + 2.0, 2.0 - np.log(np.pi * state.l_z)
    raise InvalidParameterError(f"No closed-form marginal entropies for {type(state).__name__}")
