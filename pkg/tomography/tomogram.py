"""
Tomograms of one-mode and product states

Symplectic w(X, mu, nu), optical w(X, t) and Fresnel w_F(X, nu) densities.
Gaussian families use closed forms; other pure states go through the
chirp kernel of transforms.frft; mixtures are convex sums evaluated on a
common lattice.

Without an explicit grid the density is returned on the natural lattice
of the chirp kernel for a computation grid that depends on the state
only, never on (mu, nu). With an explicit grid the kernel's discrete
spectrum is evaluated at the requested points.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import (
    CoverageError,
    DimensionError,
    InvalidParameterError,
    InvariantViolationError,
)
from ..states.state_schema import (
    GaussianCovarianceState,
    Grid,
    GroundGaussian,
    MixedState,
    ProductState,
    Sampled,
    Soliton,
    WaistGaussian,
)
from ..states.wavefunctions import evaluate_wavefunction, phase_space_moments
from ..transforms.frft import (
    ChirpKernelParams,
    TransformMethod,
    chirp_envelope,
    chirp_lattice,
    interpolate_samples,
)
from .config import DEFAULT_CONFIG, TomographyConfig


logger = logging.getLogger(__name__)

TAMPER_FACTOR = 0.9
GAUSSIAN_WIDTHS = 8.0
CLOSED_FORM_WIDTHS = 10.0
SOLITON_POSITION_WIDTHS = 16.0
SOLITON_MOMENTUM_WIDTHS = 32.0
LATTICE_HEADROOM = 1.1


class TomogramKind(str, Enum):
    SYMPLECTIC = "symplectic"
    OPTICAL = "optical"
    FRESNEL = "fresnel"


class DensityMethod(str, Enum):
    """How a tomogram density was produced"""
    CLOSED_FORM = "closed_form"
    FFT = "fft"
    DENSE = "dense"
    MIXED = "mixed"


class TomogramParams(BaseModel):
    """Parameters a tomogram was evaluated at; t is set for optical tomograms"""
    model_config = ConfigDict(frozen=True)

    kind: TomogramKind
    mu: float
    nu: float
    t: Optional[float] = None

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "mu": self.mu, "nu": self.nu}
        if self.t is not None:
            data["t"] = self.t
        return data


@dataclass(frozen=True)
class Tomogram:
    """Probability density w on an ascending X lattice"""
    grid: Grid
    density: np.ndarray
    params: TomogramParams
    normalization_defect: float
    method: DensityMethod
    clamped: int = 0

    @property
    def mass(self) -> float:
        return float(np.sum(self.density) * self.grid.step)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "grid": {"x_min": self.grid.x_min, "step": self.grid.step, "n_points": self.grid.n_points},
            "density": [float(v) for v in self.density],
            "normalization_defect": self.normalization_defect,
            "method": self.method.value,
            "clamped": self.clamped,
        }


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def _next_pow2(value: int) -> int:
    return 1 << max(1, int(value - 1).bit_length())


def _support(state) -> Tuple[float, float]:
    """Half-widths (position, momentum) holding the state to round-off"""
    if isinstance(state, Soliton):
        return SOLITON_POSITION_WIDTHS * state.l_z, SOLITON_MOMENTUM_WIDTHS / (math.pi * state.l_z)
    if isinstance(state, MixedState):
        extents = [_support(c.state) for c in state.components if not isinstance(c.state, Sampled)]
        if not extents:
            return 0.0, 0.0
        return max(e[0] for e in extents), max(e[1] for e in extents)
    m = phase_space_moments(state)
    return (
        abs(m.mean_q) + GAUSSIAN_WIDTHS * math.sqrt(m.var_q),
        abs(m.mean_p) + GAUSSIAN_WIDTHS * math.sqrt(m.var_p),
    )


def _sampled_grid(state) -> Optional[Grid]:
    if isinstance(state, Sampled):
        return state.grid
    if isinstance(state, MixedState):
        grids = [c.state.grid for c in state.components if isinstance(c.state, Sampled)]
        if not grids:
            return None
        if any(not g.matches(grids[0]) for g in grids[1:]):
            raise DimensionError("Sampled mixture components must share one grid")
        return grids[0]
    return None


def computation_grid(state, config: Optional[TomographyConfig] = None) -> Grid:
    """
    Position grid on which a state's wavefunction is sampled.

    Half-width L = max(X_ext + P_ext, grid_halfwidth) and
    n >= 1.1 * 2 L (X_ext + P_ext) / pi so the chirp of either kernel branch
    stays below the Nyquist frequency wherever the state lives. Sampled
    states use their own grid.
    """
    config = config or DEFAULT_CONFIG
    own = _sampled_grid(state)
    if own is not None:
        return own

    x_ext, p_ext = _support(state)
    extent = x_ext + p_ext
    half_width = max(extent, config.grid_halfwidth)
    required = math.ceil(LATTICE_HEADROOM * 2 * half_width * extent / math.pi)
    n_points = config.grid_n if required <= config.grid_n else max(config.grid_n, _next_pow2(required))
    if config.strict:
        n_points *= 2
    logger.debug(f"computation grid for {state.label}: half_width={half_width:.6g} n={n_points}")
    return Grid.centered(half_width, n_points)


def _closed_form_grid(variance: float, config: TomographyConfig) -> Grid:
    half_width = max(CLOSED_FORM_WIDTHS * math.sqrt(variance), config.grid_halfwidth)
    n_points = config.grid_n * (2 if config.strict else 1)
    return Grid.centered(half_width, n_points)


# ---------------------------------------------------------------------------
# Densities
# ---------------------------------------------------------------------------

def uses_closed_form(state, config: TomographyConfig) -> bool:
    if isinstance(state, GaussianCovarianceState):
        return True
    return isinstance(state, (GroundGaussian, WaistGaussian)) and not config.force_fft


def quadrature_moments(state, mu: float, nu: float) -> Tuple[float, float]:
    """Mean and variance of X = mu q + nu p"""
    if isinstance(state, GaussianCovarianceState):
        return 0.0, state.quadrature_variance(mu, nu)
    m = phase_space_moments(state)
    mean = mu * m.mean_q + nu * m.mean_p
    variance = mu ** 2 * m.var_q + nu ** 2 * m.var_p + 2 * mu * nu * m.cov_qp
    return mean, variance


def _gaussian(x: np.ndarray, mean: float, variance: float) -> np.ndarray:
    return np.exp(-(x - mean) ** 2 / (2 * variance)) / np.sqrt(2 * np.pi * variance)


def _pure_density(
    state,
    params: ChirpKernelParams,
    comp: Grid,
    target: Grid,
    on_lattice: bool,
    config: TomographyConfig,
    method: TransformMethod,
) -> np.ndarray:
    mu, nu = params.mu, params.nu
    if uses_closed_form(state, config):
        mean, variance = quadrature_moments(state, mu, nu)
        return _gaussian(target.points, mean, variance)

    psi = evaluate_wavefunction(state, comp).values
    guard = config.nu_guard * params.radius

    if abs(nu) < guard:
        # position marginal through homogeneity: |psi(X/mu)|^2 / |mu|
        if on_lattice:
            values = np.abs(psi) ** 2 / abs(mu)
            return values[::-1] if mu < 0 else values
        u = target.points / mu
        samples = interpolate_samples(psi, comp, u, method) if isinstance(state, Sampled) else state.wavefunction(u)
        return np.abs(samples) ** 2 / abs(mu)

    envelope = chirp_envelope(psi, comp, params, method=method, nu_guard=guard)
    amplitude = envelope.lattice_values if on_lattice else envelope.evaluate(target.points)
    return np.abs(amplitude) ** 2


def _clamp(density: np.ndarray, floor: float) -> Tuple[np.ndarray, int]:
    negative = density < 0
    if not negative.any():
        return density, 0
    worst = float(density.min())
    if worst < -floor:
        raise InvariantViolationError(f"Tomogram density reaches {worst:.3g}, below the round-off floor -{floor:g}")
    logger.warning(f"⚠️ Clamped {int(negative.sum())} negative round-off values (min {worst:.3g})")
    return np.where(negative, 0.0, density), int(negative.sum())


def _check_coverage(state, density: np.ndarray, grid: Grid, config: TomographyConfig) -> None:
    mass = float(np.sum(density) * grid.step)
    missing = abs(1.0 - mass)
    if missing <= config.coverage_tolerance:
        return
    message = (
        f"Grid [{grid.x_min:.6g}, {grid.x_max:.6g}] holds mass {mass:.8g} of {state.label}; "
        f"widen the window or add points"
    )
    if config.strict:
        raise CoverageError(message)
    logger.warning(f"⚠️ {message}")


def symplectic_tomogram(
    state,
    mu: float,
    nu: float,
    grid: Optional[Grid] = None,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> Tomogram:
    """
    Symplectic tomogram w(X, mu, nu) of a one-mode state.

    Args:
        state: Pure, mixed or Gaussian covariance state
        mu, nu: Quadrature X = mu q + nu p, not both zero
        grid: Output X lattice; automatic when omitted
        config: Numeric settings
        method: FFT route or the dense oracle for numeric densities

    Returns:
        Tomogram with its normalization defect
    """
    config = config or DEFAULT_CONFIG
    if isinstance(state, ProductState):
        raise InvalidParameterError("Product states take per-mode parameters; use product_tomogram")
    params = ChirpKernelParams(mu=mu, nu=nu)

    comp: Optional[Grid] = None
    if grid is not None:
        target, on_lattice = grid, False
    elif uses_closed_form(state, config):
        target, on_lattice = _closed_form_grid(quadrature_moments(state, mu, nu)[1], config), False
    else:
        comp = computation_grid(state, config)
        target, on_lattice = chirp_lattice(comp, params, config.nu_guard * params.radius), True

    if isinstance(state, MixedState):
        comp = comp or computation_grid(state, config)
        density = np.zeros(target.n_points)
        for component in state.components:
            density = density + component.weight * _pure_density(
                component.state, params, comp, target, on_lattice, config, method
            )
        used = DensityMethod.MIXED
    else:
        if comp is None and not uses_closed_form(state, config):
            comp = computation_grid(state, config)
        density = _pure_density(state, params, comp, target, on_lattice, config, method)
        if uses_closed_form(state, config):
            used = DensityMethod.CLOSED_FORM
        else:
            used = DensityMethod.DENSE if method == TransformMethod.DENSE else DensityMethod.FFT

    density, clamped = _clamp(density, config.clamp_floor)
    _check_coverage(state, density, target, config)
    if config.tamper:
        density = TAMPER_FACTOR * density

    mass = float(np.sum(density) * target.step)
    return Tomogram(
        grid=target,
        density=density,
        params=TomogramParams(kind=TomogramKind.SYMPLECTIC, mu=mu, nu=nu),
        normalization_defect=abs(mass - 1.0),
        method=used,
        clamped=clamped,
    )


def optical_parameters(t: float, angle_guard: float) -> Tuple[float, float]:
    """(cos t, sin t) with components inside the angle guard set to zero"""
    c, s = math.cos(t), math.sin(t)
    if abs(s) < angle_guard:
        s = 0.0
    elif abs(c) < angle_guard:
        c = 0.0
    return c, s


def optical_tomogram(
    state,
    t: float,
    grid: Optional[Grid] = None,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> Tomogram:
    """Optical tomogram w(X, t) = w(X, cos t, sin t)"""
    config = config or DEFAULT_CONFIG
    mu, nu = optical_parameters(t, config.angle_guard)
    tom = symplectic_tomogram(state, mu, nu, grid=grid, config=config, method=method)
    return replace(tom, params=TomogramParams(kind=TomogramKind.OPTICAL, mu=mu, nu=nu, t=t))


def fresnel_tomogram(
    state,
    nu: float,
    grid: Optional[Grid] = None,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> Tomogram:
    """Fresnel tomogram w_F(X, nu) = w(X, 1, nu)"""
    tom = symplectic_tomogram(state, 1.0, nu, grid=grid, config=config, method=method)
    return replace(tom, params=TomogramParams(kind=TomogramKind.FRESNEL, mu=1.0, nu=nu))


def homogeneity_rescale(tom: Tomogram, lam: float) -> Tomogram:
    """
    Tomogram at (lam mu, lam nu) from w(lam X, lam mu, lam nu) = w(X, mu, nu) / |lam|.

    Pure relabelling of axis and density; nothing is recomputed.
    """
    if lam == 0:
        raise InvalidParameterError("Homogeneity factor must be nonzero")
    grid = tom.grid.scaled(lam)
    density = tom.density / abs(lam)
    if lam < 0:
        density = density[::-1]
    mass = float(np.sum(density) * grid.step)
    params = TomogramParams(kind=TomogramKind.SYMPLECTIC, mu=lam * tom.params.mu, nu=lam * tom.params.nu)
    return Tomogram(
        grid=grid,
        density=density,
        params=params,
        normalization_defect=abs(mass - 1.0),
        method=tom.method,
        clamped=tom.clamped,
    )


def product_tomogram(
    state: ProductState,
    mu: Sequence[float],
    nu: Sequence[float],
    grids: Optional[Sequence[Optional[Grid]]] = None,
    config: Optional[TomographyConfig] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> List[Tomogram]:
    """Per-mode factors of a product-state tomogram; the joint density is their product"""
    n = state.n_modes
    grids = list(grids) if grids is not None else [None] * n
    if len(mu) != n or len(nu) != n or len(grids) != n:
        raise DimensionError(
            f"Product state has {n} modes but got {len(mu)} mu, {len(nu)} nu and {len(grids)} grids"
        )
    return [
        symplectic_tomogram(mode, m, v, grid=g, config=config, method=method)
        for mode, m, v, g in zip(state.modes, mu, nu, grids)
    ]
