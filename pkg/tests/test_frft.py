"""
Test cases for the FFT transform engine

1. Fourier pair
2. Chirp kernel against the dense and direct-quadrature oracles
3. Envelope resampling
4. Fractional Fourier transform
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from ..errors import DimensionError, InvalidParameterError, NearSingularError
from ..states.state_schema import Grid, GroundGaussian, Soliton, WaistGaussian
from ..transforms.frft import (
    ChirpBranch,
    ChirpKernelParams,
    TransformMethod,
    chirp_envelope,
    chirp_lattice,
    chirp_tomogram_amplitude,
    conjugate_grid,
    direct_chirp_amplitude,
    fourier_transform,
    fractional_fourier,
    interpolate_samples,
    inverse_fourier_transform,
    resample_chirp_amplitude,
)


# Self-conjugate lattice: step = sqrt(pi/128) in both x and p
SELF_CONJUGATE = Grid.centered(math.sqrt(128 * math.pi), 256)


def samples(state, grid: Grid) -> np.ndarray:
    return state.wavefunction(grid.points)


# ============================================================================
# TEST SUITE 1: Fourier pair
# ============================================================================

def test_suite_1_conjugate_grid():
    grid = Grid.centered(10.0, 128)
    pgrid = conjugate_grid(grid)
    assert pgrid.step * grid.step * grid.n_points == pytest.approx(2 * math.pi)
    assert pgrid.x_min == pytest.approx(-64 * pgrid.step)

    assert conjugate_grid(SELF_CONJUGATE).matches(SELF_CONJUGATE, rtol=1e-12)


def test_suite_1_ground_state_is_fourier_invariant():
    grid = Grid.centered(12.0, 512)
    result = fourier_transform(samples(GroundGaussian(), grid), grid)
    expected = GroundGaussian().wavefunction(result.grid.points)
    assert np.allclose(result.values, expected, atol=1e-12)
    assert result.normalization_defect < 1e-12


def test_suite_1_fourier_fourth_power_is_identity():
    grid = SELF_CONJUGATE
    psi = samples(WaistGaussian(sigma=2.0), grid) * np.exp(0.7j * grid.points)
    values, current = psi, grid
    for _ in range(4):
        result = fourier_transform(values, current)
        values, current = result.values, result.grid
    assert current.matches(grid)
    assert np.allclose(values, psi, atol=1e-12)


def test_suite_1_inverse_round_trip_and_dense_oracle():
    grid = Grid.centered(20.0, 200)
    psi = samples(Soliton(l_z=1.5), grid)
    fft = fourier_transform(psi, grid)
    dense = fourier_transform(psi, grid, method=TransformMethod.DENSE)
    assert np.allclose(fft.values, dense.values, atol=1e-12)

    back = inverse_fourier_transform(fft.values, fft.grid, grid)
    assert np.allclose(back.values, psi, atol=1e-12)

    with pytest.raises(DimensionError):
        inverse_fourier_transform(fft.values, fft.grid, Grid.centered(21.0, 200))
    with pytest.raises(DimensionError):
        fourier_transform(psi[:-1], grid)


# ============================================================================
# TEST SUITE 2: Chirp kernel
# ============================================================================

def test_suite_2_kernel_params():
    assert ChirpKernelParams(mu=1.0, nu=2.0).branch == ChirpBranch.FOURIER
    assert ChirpKernelParams(mu=-3.0, nu=2.0).branch == ChirpBranch.CONVOLUTION
    assert ChirpKernelParams(mu=3.0, nu=4.0).radius == pytest.approx(5.0)
    with pytest.raises(InvalidParameterError):
        ChirpKernelParams(mu=0.0, nu=0.0)
    with pytest.raises(ValidationError):
        ChirpKernelParams(mu="a", nu=1.0)


@pytest.mark.parametrize("mu,nu", [(1.0, 0.5), (0.3, 1.0), (-0.8, 0.6), (0.5, -2.0), (0.0, 1.0)])
def test_suite_2_fft_matches_dense_oracle(mu, nu):
    grid = Grid.centered(20.0, 128)
    psi = samples(Soliton(l_z=2.0), grid)
    params = ChirpKernelParams(mu=mu, nu=nu)
    fft = chirp_tomogram_amplitude(psi, grid, params)
    dense = chirp_tomogram_amplitude(psi, grid, params, method=TransformMethod.DENSE)

    assert fft.grid.matches(dense.grid)
    assert fft.grid.matches(chirp_lattice(grid, params))
    assert np.all(np.diff(fft.grid.points) > 0)
    assert np.allclose(fft.values, dense.values, atol=1e-10)
    assert fft.normalization_defect < 1e-8


def test_suite_2_ground_state_tomogram_amplitude():
    grid = Grid.centered(12.0, 512)
    mu, nu = 0.8, 1.3
    amplitude = chirp_tomogram_amplitude(samples(GroundGaussian(), grid), grid, ChirpKernelParams(mu=mu, nu=nu))
    variance = 0.5 * (mu ** 2 + nu ** 2)
    x = amplitude.grid.points
    expected = np.exp(-x ** 2 / (2 * variance)) / np.sqrt(2 * np.pi * variance)
    assert np.allclose(np.abs(amplitude.values) ** 2, expected, atol=1e-10)


@pytest.mark.parametrize("mu,nu", [(0.7, 1.1), (1.3, -0.6), (-1.0, 0.8)])
def test_suite_2_fft_matches_direct_quadrature(mu, nu):
    state = WaistGaussian(sigma=1.5)
    grid = Grid.centered(16.0, 256)
    fine = Grid.centered(16.0, 4096)
    params = ChirpKernelParams(mu=mu, nu=nu)
    fft = chirp_tomogram_amplitude(samples(state, grid), grid, params)
    direct = direct_chirp_amplitude(samples(state, fine), fine, params, fft.grid.points)
    assert np.allclose(np.abs(fft.values) ** 2, np.abs(direct) ** 2, atol=1e-10)
    with pytest.raises(NearSingularError):
        direct_chirp_amplitude(samples(state, fine), fine, ChirpKernelParams(mu=1.0, nu=1e-9), fft.grid.points)


def test_suite_2_nu_guard():
    grid = Grid.centered(10.0, 64)
    psi = samples(GroundGaussian(), grid)
    with pytest.raises(NearSingularError):
        chirp_envelope(psi, grid, ChirpKernelParams(mu=1.0, nu=1e-9))
    assert chirp_lattice(grid, ChirpKernelParams(mu=2.0, nu=1e-9)).matches(grid.scaled(2.0))


# ============================================================================
# TEST SUITE 3: Envelope resampling
# ============================================================================

@pytest.mark.parametrize("mu,nu", [(1.0, 0.4), (0.4, -1.0)])
def test_suite_3_envelope_reproduces_lattice(mu, nu):
    grid = Grid.centered(20.0, 128)
    psi = samples(Soliton(l_z=2.0), grid)
    envelope = chirp_envelope(psi, grid, ChirpKernelParams(mu=mu, nu=nu))
    assert np.allclose(envelope.evaluate(envelope.lattice.points), envelope.lattice_values, atol=1e-10)


def test_suite_3_resampling_off_lattice():
    grid = Grid.centered(12.0, 256)
    psi = samples(GroundGaussian(), grid)
    mu, nu = 1.0, 0.7
    x = np.linspace(-3.0, 3.0, 41)
    values = resample_chirp_amplitude(psi, grid, ChirpKernelParams(mu=mu, nu=nu), x)
    variance = 0.5 * (mu ** 2 + nu ** 2)
    expected = np.exp(-x ** 2 / (2 * variance)) / np.sqrt(2 * np.pi * variance)
    assert np.allclose(np.abs(values) ** 2, expected, atol=1e-10)


def test_suite_3_interpolation_is_exact_on_lattice():
    grid = Grid.centered(14.0, 128)
    psi = samples(WaistGaussian(sigma=1.5), grid)
    assert np.allclose(interpolate_samples(psi, grid, grid.points), psi, atol=1e-12)
    midpoints = grid.points[:-1] + grid.step / 2
    exact = WaistGaussian(sigma=1.5).wavefunction(midpoints)
    assert np.allclose(interpolate_samples(psi, grid, midpoints), exact, atol=1e-10)


@pytest.mark.parametrize("mu,nu", [(1.0, 0.5), (0.5, 1.0)])
def test_suite_3_evaluation_vanishes_outside_lattice_span(mu, nu):
    grid = Grid.centered(12.0, 256)
    psi = samples(GroundGaussian(), grid)
    envelope = chirp_envelope(psi, grid, ChirpKernelParams(mu=mu, nu=nu))
    span = envelope.lattice
    outside = np.array([span.x_min - span.step, span.x_max + span.step, 3 * span.x_max])
    assert np.all(envelope.evaluate(outside) == 0)
    edges = np.array([span.x_min, span.x_max])
    assert np.allclose(envelope.evaluate(edges), envelope.lattice_values[[0, -1]], atol=1e-12)

    beyond = np.array([grid.x_min - grid.step, grid.x_max + 2 * grid.step, 2 * grid.x_max + 1.0])
    assert np.all(interpolate_samples(psi, grid, beyond) == 0)


# ============================================================================
# TEST SUITE 4: Fractional Fourier transform
# ============================================================================

def test_suite_4_ground_state_phase():
    grid = Grid.centered(12.0, 512)
    for t in (0.3, math.pi / 4, math.pi / 2, 2.5):
        result = fractional_fourier(samples(GroundGaussian(), grid), grid, t)
        expected = np.exp(-0.5j * t) * GroundGaussian().wavefunction(result.grid.points)
        assert np.allclose(result.values, expected, atol=1e-10), t


def test_suite_4_quarter_turn_is_fourier_transform():
    grid = SELF_CONJUGATE
    psi = samples(Soliton(l_z=1.0), grid) * np.exp(0.4j * grid.points)
    fractional = fractional_fourier(psi, grid, math.pi / 2)
    plain = fourier_transform(psi, grid)
    assert fractional.grid.matches(plain.grid)
    assert np.allclose(fractional.values, np.exp(-0.25j * math.pi) * plain.values, atol=1e-10)


def test_suite_4_semigroup():
    # t1 on the convolution branch, t2 = pi/2 - t1 on the Fourier branch:
    # both routes land on the original lattice
    grid = SELF_CONJUGATE
    psi = samples(WaistGaussian(sigma=2.0), grid)
    t1 = 0.5
    first = fractional_fourier(psi, grid, t1)
    composed = fractional_fourier(first.values, first.grid, math.pi / 2 - t1)
    direct = fractional_fourier(psi, grid, math.pi / 2)
    assert composed.grid.matches(direct.grid, rtol=1e-10)
    assert np.allclose(composed.values, direct.values, atol=1e-8)


@pytest.mark.parametrize("t1,t2", [(0.3, 0.4), (0.4, 0.9), (1.0, 0.6), (0.7, 1.2), (1.1, 1.3)])
def test_suite_4_angle_additivity(t1, t2):
    # compositions land on lattices other than the direct one, so the
    # direct result is resampled onto the composed lattice
    grid = SELF_CONJUGATE
    psi = samples(WaistGaussian(sigma=1.4), grid)
    first = fractional_fourier(psi, grid, t1)
    composed = fractional_fourier(first.values, first.grid, t2)
    direct = fractional_fourier(psi, grid, t1 + t2)
    resampled = interpolate_samples(direct.values, direct.grid, composed.grid.points)
    assert np.allclose(composed.values, resampled, atol=1e-7)
    assert composed.normalization_defect < 1e-10


def test_suite_4_angle_guard():
    grid = Grid.centered(10.0, 64)
    psi = samples(GroundGaussian(), grid)
    with pytest.raises(NearSingularError):
        fractional_fourier(psi, grid, 1e-5)
    with pytest.raises(NearSingularError):
        fractional_fourier(psi, grid, math.pi)
