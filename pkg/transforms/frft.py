"""
FFT transform engine

Plain Fourier transform, fractional Fourier transform and the
chirp-quadratic tomogram kernel

    A(X) = (2 pi |nu|)^{-1/2} * integral psi(y) exp(i mu y^2 / 2nu - i X y / nu) dy

evaluated on uniform lattices with scipy.fft. Two equivalent routes are
used for the kernel:

* |nu| >= |mu|: multiply by the chirp exp(i mu y^2 / 2nu) and Fourier
  transform; the output lattice is X_j = nu * p_j.
* |nu| <  |mu|: chirp convolution, i.e. free propagation of psi for the
  time kappa = nu/mu done in the momentum representation; the output
  lattice is X_k = mu * y_k.

Every FFT result has an O(n^2) dense counterpart (TransformMethod.DENSE)
computing the same discrete sums with explicit matrices. It checks the
FFT plumbing only. direct_chirp_amplitude is the independent oracle: it
integrates the kernel directly on a caller-chosen fine lattice.

Off-lattice evaluation is periodic in the lattice span, so points outside
the span evaluate to zero instead of to a replica of the support.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import fft as sp_fft

from ..errors import DimensionError, InvalidParameterError, NearSingularError
from ..states.state_schema import Grid


logger = logging.getLogger(__name__)

ANGLE_GUARD = 1e-3
NU_GUARD = 1e-6

_SQRT_2PI = np.sqrt(2.0 * np.pi)
_RESAMPLE_CHUNK = 512
_DIRECT_BLOCK = 1 << 22


class TransformMethod(str, Enum):
    """How discrete transform sums are evaluated"""
    FFT = "fft"
    DENSE = "dense"   # O(n^2) matrices, test oracle


class ChirpBranch(str, Enum):
    FOURIER = "fourier"
    CONVOLUTION = "convolution"


class ChirpKernelParams(BaseModel):
    """Symplectic tomography parameters (mu, nu)"""
    model_config = ConfigDict(frozen=True)

    mu: float = Field(description="Position coefficient of the quadrature")
    nu: float = Field(description="Momentum coefficient of the quadrature")

    @model_validator(mode="after")
    def _not_origin(self):
        if self.mu == 0 and self.nu == 0:
            raise InvalidParameterError("(mu, nu) = (0, 0) does not define a quadrature")
        return self

    @property
    def radius(self) -> float:
        return float(np.hypot(self.mu, self.nu))

    @property
    def branch(self) -> ChirpBranch:
        return ChirpBranch.FOURIER if abs(self.nu) >= abs(self.mu) else ChirpBranch.CONVOLUTION


@dataclass(frozen=True)
class TransformResult:
    """Transform output sampled on its natural lattice"""
    grid: Grid
    values: np.ndarray
    normalization_defect: float

    @classmethod
    def from_values(cls, grid: Grid, values: np.ndarray) -> "TransformResult":
        if values.shape != (grid.n_points,):
            raise DimensionError(f"{values.size} values for a grid of {grid.n_points} points")
        norm = float(np.sum(np.abs(values) ** 2) * grid.step)
        return cls(grid=grid, values=values, normalization_defect=abs(norm - 1.0))


def _check_samples(psi: np.ndarray, grid: Grid) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (grid.n_points,):
        raise DimensionError(f"Array of shape {psi.shape} does not match a grid of {grid.n_points} points")
    return psi


def conjugate_grid(grid: Grid) -> Grid:
    """Momentum lattice paired with grid: step 2 pi/(n dx), origin on a lattice point"""
    n = grid.n_points
    dp = 2.0 * np.pi / (n * grid.step)
    return Grid(x_min=-(n // 2) * dp, step=dp, n_points=n)


# ---------------------------------------------------------------------------
# Fourier pair
# ---------------------------------------------------------------------------

def _forward(psi: np.ndarray, grid: Grid, pgrid: Grid, method: TransformMethod) -> np.ndarray:
    x = grid.points
    p = pgrid.points
    if method == TransformMethod.DENSE:
        kernel = np.exp(-1j * np.outer(p, x))
        return grid.step / _SQRT_2PI * (kernel @ psi)
    pre = psi * np.exp(-1j * pgrid.x_min * (x - grid.x_min))
    return grid.step / _SQRT_2PI * np.exp(-1j * p * grid.x_min) * sp_fft.fft(pre)


def _inverse(phi: np.ndarray, pgrid: Grid, grid: Grid, method: TransformMethod) -> np.ndarray:
    x = grid.points
    p = pgrid.points
    if method == TransformMethod.DENSE:
        kernel = np.exp(1j * np.outer(x, p))
        return pgrid.step / _SQRT_2PI * (kernel @ phi)
    n = pgrid.n_points
    pre = phi * np.exp(1j * (p - pgrid.x_min) * grid.x_min)
    return pgrid.step / _SQRT_2PI * np.exp(1j * pgrid.x_min * x) * n * sp_fft.ifft(pre)


def fourier_transform(
    psi: np.ndarray,
    grid: Grid,
    method: TransformMethod = TransformMethod.FFT,
) -> TransformResult:
    """
    Momentum wavefunction (2 pi)^{-1/2} * integral psi(x) exp(-i p x) dx.

    Args:
        psi: Samples of psi on grid
        grid: Position lattice
        method: FFT or the dense oracle

    Returns:
        TransformResult on conjugate_grid(grid). The discrete transform is
        unitary, so the output norm equals the input norm to round-off.
    """
    psi = _check_samples(psi, grid)
    pgrid = conjugate_grid(grid)
    return TransformResult.from_values(pgrid, _forward(psi, grid, pgrid, method))


def inverse_fourier_transform(
    phi: np.ndarray,
    pgrid: Grid,
    grid: Optional[Grid] = None,
    method: TransformMethod = TransformMethod.FFT,
) -> TransformResult:
    """
    Position wavefunction from momentum samples.

    grid must be a lattice conjugate to pgrid (n * dx * dp = 2 pi); by
    default the centered conjugate lattice is used.
    """
    phi = _check_samples(phi, pgrid)
    grid = grid or conjugate_grid(pgrid)
    if grid.n_points != pgrid.n_points or not np.isclose(grid.step * pgrid.step * grid.n_points, 2 * np.pi, rtol=1e-12):
        raise DimensionError("Position and momentum lattices are not conjugate")
    return TransformResult.from_values(grid, _inverse(phi, pgrid, grid, method))


# ---------------------------------------------------------------------------
# Chirp kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChirpEnvelope:
    """
    Discrete spectrum of a chirp amplitude.

    A(X) is a finite trigonometric sum over `nodes` with weights
    `coefficients`; evaluating it at arbitrary X is band-limited
    interpolation of the lattice values.

    The sum is periodic with the lattice span as period. Points outside
    the span are replicas of the support, so they evaluate to zero.
    """
    params: ChirpKernelParams
    nodes: np.ndarray
    coefficients: np.ndarray
    lattice: Grid
    lattice_values: np.ndarray

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        inside = self.lattice.covers(x)
        out = np.zeros(x.shape, dtype=complex)
        if not inside.any():
            return out
        u = x[inside]
        mu, nu = self.params.mu, self.params.nu
        if self.params.branch == ChirpBranch.FOURIER:
            out[inside] = _trig_sum(self.nodes, self.coefficients, u / nu, sign=-1.0) / np.sqrt(abs(nu))
            return out
        kappa = nu / mu
        prefactor = np.sqrt(1j * kappa) / np.sqrt(abs(nu))
        out[inside] = np.exp(-1j * u ** 2 / (2 * mu * nu)) * prefactor * _trig_sum(
            self.nodes, self.coefficients, u / mu, sign=1.0
        )
        return out


def _trig_sum(nodes: np.ndarray, coefficients: np.ndarray, u: np.ndarray, sign: float) -> np.ndarray:
    out = np.empty(u.shape, dtype=complex)
    flat_u = u.ravel()
    flat_out = out.ravel()
    for start in range(0, flat_u.size, _RESAMPLE_CHUNK):
        block = flat_u[start:start + _RESAMPLE_CHUNK]
        flat_out[start:start + _RESAMPLE_CHUNK] = np.exp(sign * 1j * np.outer(block, nodes)) @ coefficients
    return flat_out.reshape(u.shape)


def _ascending(lattice: Grid, values: np.ndarray, scale: float):
    out_grid = lattice.scaled(scale)
    return out_grid, (values[::-1] if scale < 0 else values)


def chirp_envelope(
    psi: np.ndarray,
    grid: Grid,
    params: ChirpKernelParams,
    method: TransformMethod = TransformMethod.FFT,
    nu_guard: float = NU_GUARD,
) -> ChirpEnvelope:
    """Amplitude of the (mu, nu) kernel on its natural lattice plus its spectrum"""
    psi = _check_samples(psi, grid)
    mu, nu = params.mu, params.nu
    if abs(nu) < nu_guard:
        raise NearSingularError(f"|nu| = {abs(nu):.3g} is below the guard {nu_guard:g}; use the nu -> 0 limit")

    y = grid.points
    pgrid = conjugate_grid(grid)

    if params.branch == ChirpBranch.FOURIER:
        chirped = psi * np.exp(1j * mu * y ** 2 / (2 * nu))
        values = _forward(chirped, grid, pgrid, method) / np.sqrt(abs(nu))
        lattice, values = _ascending(pgrid, values, nu)
        return ChirpEnvelope(
            params=params,
            nodes=y,
            coefficients=grid.step / _SQRT_2PI * chirped,
            lattice=lattice,
            lattice_values=values,
        )

    kappa = nu / mu
    p = pgrid.points
    propagated = _forward(psi, grid, pgrid, method) * np.exp(-1j * kappa * p ** 2 / 2)
    free = _inverse(propagated, pgrid, grid, method)
    x_out = mu * y
    values = np.exp(-1j * x_out ** 2 / (2 * mu * nu)) * (np.sqrt(1j * kappa) / np.sqrt(abs(nu))) * free
    lattice, values = _ascending(grid, values, mu)
    return ChirpEnvelope(
        params=params,
        nodes=p,
        coefficients=pgrid.step / _SQRT_2PI * propagated,
        lattice=lattice,
        lattice_values=values,
    )


def chirp_tomogram_amplitude(
    psi: np.ndarray,
    grid: Grid,
    params: ChirpKernelParams,
    method: TransformMethod = TransformMethod.FFT,
    nu_guard: float = NU_GUARD,
) -> TransformResult:
    """
    Tomogram amplitude A(X) with w(X, mu, nu) = |A(X)|^2.

    Args:
        psi: Samples of the wavefunction on grid
        grid: Position lattice
        params: Kernel parameters (mu, nu)
        method: FFT route or the dense oracle
        nu_guard: Smallest |nu| accepted

    Returns:
        TransformResult on an ascending X lattice (nu * p_j or mu * y_k).

    Raises:
        NearSingularError: |nu| below nu_guard
    """
    envelope = chirp_envelope(psi, grid, params, method=method, nu_guard=nu_guard)
    logger.debug(
        f"chirp amplitude mu={params.mu:.6g} nu={params.nu:.6g} "
        f"branch={params.branch.value} method={method.value}"
    )
    return TransformResult.from_values(envelope.lattice, envelope.lattice_values)


def chirp_lattice(grid: Grid, params: ChirpKernelParams, nu_guard: float = NU_GUARD) -> Grid:
    """Ascending X lattice produced for psi sampled on grid"""
    if abs(params.nu) < nu_guard or params.branch == ChirpBranch.CONVOLUTION:
        return grid.scaled(params.mu)
    return conjugate_grid(grid).scaled(params.nu)


def interpolate_samples(
    psi: np.ndarray,
    grid: Grid,
    x: np.ndarray,
    method: TransformMethod = TransformMethod.FFT,
) -> np.ndarray:
    """
    Band-limited interpolation of lattice samples; exact on the lattice
    points and zero beyond half a step outside the lattice span.
    """
    psi = _check_samples(psi, grid)
    x = np.asarray(x, dtype=float)
    inside = grid.covers(x)
    out = np.zeros(x.shape, dtype=complex)
    if not inside.any():
        return out
    pgrid = conjugate_grid(grid)
    spectrum = _forward(psi, grid, pgrid, method)
    out[inside] = _trig_sum(pgrid.points, pgrid.step / _SQRT_2PI * spectrum, x[inside], sign=1.0)
    return out


def resample_chirp_amplitude(
    psi: np.ndarray,
    grid: Grid,
    params: ChirpKernelParams,
    x: np.ndarray,
    method: TransformMethod = TransformMethod.FFT,
    nu_guard: float = NU_GUARD,
) -> np.ndarray:
    """A(X) at arbitrary points by exact evaluation of the discrete spectrum"""
    return chirp_envelope(psi, grid, params, method=method, nu_guard=nu_guard).evaluate(x)


def direct_chirp_amplitude(
    psi: np.ndarray,
    grid: Grid,
    params: ChirpKernelParams,
    x: np.ndarray,
    nu_guard: float = NU_GUARD,
) -> np.ndarray:
    """
    A(X) by direct rectangle-rule quadrature of the kernel integral.

    Costs O(n m) for n samples and m output points and shares no lattice
    with the FFT routes, so grid must resolve exp(i mu y^2 / 2nu - i X y / nu)
    wherever psi is not negligible.
    """
    psi = _check_samples(psi, grid)
    mu, nu = params.mu, params.nu
    if abs(nu) < nu_guard:
        raise NearSingularError(f"|nu| = {abs(nu):.3g} is below the guard {nu_guard:g}; use the nu -> 0 limit")
    y = grid.points
    weights = grid.step * psi * np.exp(1j * mu * y ** 2 / (2 * nu)) / np.sqrt(2 * np.pi * abs(nu))

    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.empty(flat.size, dtype=complex)
    rows = max(1, _DIRECT_BLOCK // grid.n_points)
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        out[start:start + rows] = np.exp(-1j * np.outer(block, y) / nu) @ weights
    return out.reshape(x.shape)


def fractional_fourier(
    psi: np.ndarray,
    grid: Grid,
    t: float,
    method: TransformMethod = TransformMethod.FFT,
    angle_guard: float = ANGLE_GUARD,
) -> TransformResult:
    """
    Fractional Fourier transform of order t with the oscillator Green
    function kernel exp[(i/2)(cot t (y^2 + X^2) - 2 X y / sin t)] / sqrt(2 pi i sin t).

    The square root takes the principal branch, so t -> 0+ tends to the
    identity. |result|^2 is the optical tomogram at angle t.
    """
    s = np.sin(t)
    if abs(s) < angle_guard:
        raise NearSingularError(f"|sin t| = {abs(s):.3g} is below the angle guard {angle_guard:g}")
    params = ChirpKernelParams(mu=float(np.cos(t)), nu=float(s))
    amplitude = chirp_tomogram_amplitude(psi, grid, params, method=method, nu_guard=0.0)
    x = amplitude.grid.points
    phase = np.exp(0.5j * x ** 2 * np.cos(t) / s) * (np.sqrt(abs(s)) / np.sqrt(1j * s))
    return TransformResult.from_values(amplitude.grid, phase * amplitude.values)
