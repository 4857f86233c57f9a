"""
Test cases for tomograms and the run configuration

1. Configuration layers
2. Automatic grids
3. Closed-form and numeric densities
4. Homogeneity, Fresnel and optical variants
5. Mixtures, sampled states, products
6. Guards: coverage, tamper, invalid parameters
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from ..errors import CoverageError, DimensionError, InvalidParameterError, ParseError
from ..states.catalog import StateCatalog
from ..states.state_schema import (
    Grid,
    GroundGaussian,
    ProductState,
    Sampled,
    SqueezedCorrelated,
    Soliton,
    WaistGaussian,
)
from ..tomography.config import DEFAULT_CONFIG, TomographyConfig, load_config
from ..tomography.tomogram import (
    DensityMethod,
    TomogramKind,
    computation_grid,
    fresnel_tomogram,
    homogeneity_rescale,
    optical_parameters,
    optical_tomogram,
    product_tomogram,
    symplectic_tomogram,
)
from ..transforms.frft import ChirpKernelParams, TransformMethod, direct_chirp_amplitude


FORCED = DEFAULT_CONFIG.with_overrides(force_fft=True)


def gaussian_density(x: np.ndarray, variance: float) -> np.ndarray:
    """Helper: centered normal density"""
    return np.exp(-x ** 2 / (2 * variance)) / np.sqrt(2 * np.pi * variance)


def l1(a: np.ndarray, b: np.ndarray, step: float) -> float:
    return float(np.sum(np.abs(a - b)) * step)


# ============================================================================
# TEST SUITE 1: Configuration layers
# ============================================================================

def test_suite_1_config_precedence(tmp_path, monkeypatch):
    monkeypatch.delenv("TOMO_CONFIG", raising=False)
    path = tmp_path / "run.yaml"
    path.write_text("grid_n: 2048\ntol_f: 0.001\nworkers: 2\n", encoding="utf-8")

    config = load_config(str(path), grid_n=512, strict=None)
    assert config.grid_n == 512
    assert config.tol_f == pytest.approx(1e-3)
    assert config.workers == 2
    assert config.strict is False

    monkeypatch.setenv("TOMO_CONFIG", str(path))
    assert load_config().grid_n == 2048


def test_suite_1_config_errors(tmp_path, monkeypatch):
    monkeypatch.delenv("TOMO_CONFIG", raising=False)
    bad = tmp_path / "bad.yaml"
    bad.write_text("grid_n: [1, 2\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_config(str(bad))
    with pytest.raises(ParseError):
        load_config(str(tmp_path / "missing.yaml"))

    unknown = tmp_path / "unknown.yaml"
    unknown.write_text("grid_points: 10\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_config(str(unknown))
    with pytest.raises(ValidationError):
        TomographyConfig(grid_n=1)


def test_suite_1_strict_tolerance():
    assert DEFAULT_CONFIG.effective_tol_f == pytest.approx(1e-4)
    assert DEFAULT_CONFIG.with_overrides(strict=True).effective_tol_f == pytest.approx(1e-5)
    assert DEFAULT_CONFIG.with_overrides(tol_f=None).tol_f == DEFAULT_CONFIG.tol_f


# ============================================================================
# TEST SUITE 2: Automatic grids
# ============================================================================

def test_suite_2_soliton_grid_sizes():
    sizes = {l_z: computation_grid(Soliton(l_z=l_z)).n_points for l_z in (2.0, 3.0, 4.0)}
    assert sizes == {2.0: 1024, 3.0: 2048, 4.0: 4096}

    strict = DEFAULT_CONFIG.with_overrides(strict=True)
    loose = computation_grid(Soliton(l_z=2.0))
    tight = computation_grid(Soliton(l_z=2.0), strict)
    assert tight.n_points == 2 * loose.n_points
    assert tight.step == pytest.approx(loose.step / 2)


def test_suite_2_user_halfwidth_and_sampled_grid():
    config = DEFAULT_CONFIG.with_overrides(grid_halfwidth=100.0)
    assert computation_grid(GroundGaussian(), config).x_min == pytest.approx(-100.0)

    grid = Grid.centered(10.0, 256)
    sampled = Sampled.normalized(grid, GroundGaussian().wavefunction(grid.points))
    assert computation_grid(sampled) == grid


# ============================================================================
# TEST SUITE 3: Densities
# ============================================================================

def test_suite_3_ground_state_closed_form():
    tom = symplectic_tomogram(GroundGaussian(), 1.0, 0.0)
    x = tom.grid.points
    assert tom.method == DensityMethod.CLOSED_FORM
    assert np.allclose(tom.density, np.exp(-x ** 2) / np.sqrt(np.pi), atol=1e-15)
    assert tom.normalization_defect < 1e-10


@pytest.mark.parametrize("mu,nu", [(1.0, 0.5), (0.4, 1.2), (-1.0, 0.3), (0.0, 1.0), (2.0, 0.0)])
def test_suite_3_forced_fft_matches_closed_form(mu, nu):
    state = WaistGaussian(sigma=2.0)
    tom = symplectic_tomogram(state, mu, nu, config=FORCED)
    assert tom.method == DensityMethod.FFT
    variance = (mu ** 2 * 4.0 + nu ** 2 / 4.0) / 2
    assert np.allclose(tom.density, gaussian_density(tom.grid.points, variance), atol=1e-9)


@pytest.mark.parametrize("mu,nu", [(1.0, 0.0), (math.cos(0.3), math.sin(0.3)), (0.2, 1.5), (-0.7, -0.7)])
def test_suite_3_soliton_normalization(mu, nu):
    tom = symplectic_tomogram(Soliton(l_z=2.0), mu, nu)
    assert tom.normalization_defect < 1e-6
    assert np.all(tom.density >= 0)
    assert np.all(np.diff(tom.grid.points) > 0)


def test_suite_3_soliton_position_marginal():
    state = Soliton(l_z=2.0)
    tom = symplectic_tomogram(state, 1.0, 0.0)
    expected = np.abs(state.wavefunction(tom.grid.points)) ** 2
    assert np.allclose(tom.density, expected, atol=1e-14)


def test_suite_3_dense_oracle():
    state = Soliton(l_z=2.0)
    fft = symplectic_tomogram(state, 1.0, 0.5)
    dense = symplectic_tomogram(state, 1.0, 0.5, method=TransformMethod.DENSE)
    assert dense.method == DensityMethod.DENSE
    assert fft.grid.matches(dense.grid)
    assert np.allclose(fft.density, dense.density, atol=1e-10)



ORACLE_STATES = [
    GroundGaussian(),
    WaistGaussian(sigma=2.0),
    Soliton(l_z=2.0),
    SqueezedCorrelated.from_correlation(0.6),
]
ORACLE_POINTS = [(1.0, 0.5), (0.5, 1.0), (-0.8, 0.6), (0.6, -0.8), (1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (-1.2, -0.9)]
QUADRATURE_GRID = Grid.centered(40.0, 8000)


def quadrature_density(state, mu: float, nu: float, x: np.ndarray) -> np.ndarray:
    """Helper: |A(X)|^2 by direct quadrature on a fine position lattice"""
    psi = state.wavefunction(QUADRATURE_GRID.points)
    amplitude = direct_chirp_amplitude(psi, QUADRATURE_GRID, ChirpKernelParams(mu=mu, nu=nu), x)
    return np.abs(amplitude) ** 2


@pytest.mark.parametrize("mu,nu", ORACLE_POINTS)
@pytest.mark.parametrize("state", ORACLE_STATES, ids=lambda s: s.label)
def test_suite_3_direct_quadrature_oracle(state, mu, nu):
    auto = symplectic_tomogram(state, mu, nu, config=FORCED)
    assert auto.method == DensityMethod.FFT
    expected = quadrature_density(state, mu, nu, auto.grid.points)
    assert l1(auto.density, expected, auto.grid.step) < 1e-6

    explicit = symplectic_tomogram(state, mu, nu, grid=Grid.centered(50.0, 1000), config=FORCED)
    expected = quadrature_density(state, mu, nu, explicit.grid.points)
    assert l1(explicit.density, expected, explicit.grid.step) < 1e-6


@pytest.mark.parametrize("mu,nu", [(1.0, 0.5), (0.5, 1.0)])
def test_suite_3_wide_explicit_grid_has_no_replicas(mu, nu):
    wide = Grid.centered(120.0, 4096)
    tom = symplectic_tomogram(Soliton(l_z=2.0), mu, nu, grid=wide)
    assert tom.normalization_defect < 1e-6
    assert np.all(tom.density[np.abs(wide.points) > 60.0] == 0.0)

    ground = symplectic_tomogram(GroundGaussian(), mu, nu, grid=Grid.centered(25.0, 400), config=FORCED)
    assert ground.method == DensityMethod.FFT
    variance = 0.5 * (mu ** 2 + nu ** 2)
    assert np.allclose(ground.density, gaussian_density(ground.grid.points, variance), atol=1e-9)
    assert ground.normalization_defect < 1e-6


# ============================================================================
# TEST SUITE 4: Homogeneity, Fresnel and optical variants
# ============================================================================

@settings(max_examples=8, deadline=None)
@given(
    lam=st.sampled_from([-3.0, -1.5, -0.5, 0.4, 2.0, 2.5]),
    angle=st.floats(min_value=0.2, max_value=2.9),
)
def test_suite_4_homogeneity_property(lam, angle):
    state = Soliton(l_z=2.0)
    tom = symplectic_tomogram(state, math.cos(angle), math.sin(angle))
    rescaled = homogeneity_rescale(tom, lam)
    direct = symplectic_tomogram(state, lam * math.cos(angle), lam * math.sin(angle), grid=rescaled.grid)
    assert l1(rescaled.density, direct.density, rescaled.grid.step) < 1e-5
    assert rescaled.normalization_defect == pytest.approx(tom.normalization_defect, abs=1e-12)


def test_suite_4_homogeneity_rejects_zero():
    tom = symplectic_tomogram(GroundGaussian(), 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        homogeneity_rescale(tom, 0.0)


def test_suite_4_fresnel_scaling():
    state = Soliton(l_z=2.0)
    mu, nu = 2.0, 0.7
    tom = symplectic_tomogram(state, mu, nu)
    grid = tom.grid.scaled(1.0 / mu)
    fresnel = fresnel_tomogram(state, nu / mu, grid=grid)
    assert fresnel.params.kind == TomogramKind.FRESNEL
    assert l1(fresnel.density, mu * tom.density, grid.step) < 1e-5


def test_suite_4_optical_parameters():
    assert optical_parameters(math.pi / 2, 1e-3) == (0.0, 1.0)
    assert optical_parameters(1e-4, 1e-3) == (pytest.approx(1.0), 0.0)
    c, s = optical_parameters(0.3, 1e-3)
    assert (c, s) == (pytest.approx(math.cos(0.3)), pytest.approx(math.sin(0.3)))

    tom = optical_tomogram(Soliton(l_z=2.0), 0.3)
    assert tom.params.kind == TomogramKind.OPTICAL
    assert tom.params.t == 0.3
    assert tom.normalization_defect < 1e-6


# ============================================================================
# TEST SUITE 5: Mixtures, sampled states, products
# ============================================================================

def test_suite_5_mixture_is_weighted_sum():
    mixture = StateCatalog.mixture()
    grid = Grid.centered(30.0, 1024)
    mixed = symplectic_tomogram(mixture, 1.0, 0.5, grid=grid)
    parts = [symplectic_tomogram(c.state, 1.0, 0.5, grid=grid) for c in mixture.components]
    expected = sum(c.weight * p.density for c, p in zip(mixture.components, parts))
    assert mixed.method == DensityMethod.MIXED
    assert np.allclose(mixed.density, expected, atol=1e-7)
    assert symplectic_tomogram(mixture, 1.0, 0.5).normalization_defect < 1e-6


def test_suite_5_sampled_state_matches_analytic():
    grid = Grid.centered(10.0, 256)
    sampled = Sampled.normalized(grid, GroundGaussian().wavefunction(grid.points))
    tom = symplectic_tomogram(sampled, 1.0, 0.5)
    assert np.allclose(tom.density, gaussian_density(tom.grid.points, 0.5 * 1.25), atol=1e-8)

    position = symplectic_tomogram(sampled, 1.0, 0.0, grid=Grid.centered(5.0, 101))
    assert np.allclose(position.density, gaussian_density(position.grid.points, 0.5), atol=1e-8)


    # explicit grids wider than the state's own lattice
    wide_position = symplectic_tomogram(sampled, 1.0, 0.0, grid=Grid.centered(30.0, 600))
    assert np.allclose(wide_position.density, gaussian_density(wide_position.grid.points, 0.5), atol=1e-8)
    assert wide_position.normalization_defect < 1e-6
    wide = symplectic_tomogram(sampled, 1.0, 0.5, grid=Grid.centered(40.0, 800))
    assert np.allclose(wide.density, gaussian_density(wide.grid.points, 0.5 * 1.25), atol=1e-8)
    assert wide.normalization_defect < 1e-6


def test_suite_5_product_tomogram():
    product = ProductState(modes=[GroundGaussian(), Soliton(l_z=2.0)])
    factors = product_tomogram(product, [1.0, 0.6], [0.0, 0.8])
    assert len(factors) == 2
    assert all(f.normalization_defect < 1e-6 for f in factors)
    with pytest.raises(DimensionError):
        product_tomogram(product, [1.0], [0.0, 0.8])
    with pytest.raises(InvalidParameterError):
        symplectic_tomogram(product, 1.0, 0.0)


# ============================================================================
# TEST SUITE 6: Guards
# ============================================================================

def test_suite_6_coverage():
    narrow = Grid.centered(2.0, 128)
    tom = symplectic_tomogram(Soliton(l_z=2.0), 1.0, 0.0, grid=narrow)
    assert tom.normalization_defect > 0.1
    with pytest.raises(CoverageError):
        symplectic_tomogram(Soliton(l_z=2.0), 1.0, 0.0, grid=narrow, config=DEFAULT_CONFIG.with_overrides(strict=True))


def test_suite_6_tamper_scales_density():
    honest = symplectic_tomogram(GroundGaussian(), 1.0, 0.0)
    tampered = symplectic_tomogram(GroundGaussian(), 1.0, 0.0, config=DEFAULT_CONFIG.with_overrides(tamper=True))
    assert np.allclose(tampered.density, 0.9 * honest.density)
    assert tampered.normalization_defect == pytest.approx(0.1, abs=1e-8)


def test_suite_6_invalid_parameters():
    with pytest.raises(InvalidParameterError):
        symplectic_tomogram(GroundGaussian(), 0.0, 0.0)
    with pytest.raises(InvalidParameterError):
        symplectic_tomogram(Soliton(l_z=1.0), 0.0, 0.0)
