"""
State schema for the tomography pipeline

One-mode states (analytic families, sampled wavefunctions, mixtures and
Gaussian covariance states) plus tensor products of them. All models are
frozen; sampled amplitudes are stored as read-only arrays.
"""

from enum import Enum
from typing import Annotated, List, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import DimensionError, InvalidParameterError, InvariantViolationError


class StateFamily(str, Enum):
    """Discriminator values used in JSON state documents"""
    GROUND = "ground"
    GAUSSIAN = "gaussian"
    SQUEEZED = "squeezed"
    SOLITON = "soliton"
    SAMPLED = "sampled"
    MIXED = "mixed"
    COVARIANCE = "covariance"
    PRODUCT = "product"


WEIGHT_SUM_TOLERANCE = 1e-12
UNCERTAINTY_FLOOR = 0.25


class Grid(BaseModel):
    """Uniform sampling lattice x_k = x_min + k*step"""
    model_config = ConfigDict(frozen=True)

    x_min: float = Field(description="First lattice point")
    step: float = Field(gt=0, description="Lattice spacing")
    n_points: int = Field(ge=2, description="Number of lattice points")

    @classmethod
    def centered(cls, half_width: float, n_points: int) -> "Grid":
        """Lattice on [-half_width, half_width) with the origin on a lattice point"""
        if half_width <= 0:
            raise InvalidParameterError(f"half_width must be positive, got {half_width}")
        step = 2.0 * half_width / n_points
        return cls(x_min=-(n_points // 2) * step, step=step, n_points=n_points)

    @property
    def points(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.n_points)

    @property
    def x_max(self) -> float:
        return self.x_min + self.step * (self.n_points - 1)

    def scaled(self, factor: float) -> "Grid":
        """
        Lattice of factor*x_k, kept ascending.

        For negative factors the lattice order is reversed, so values
        attached to the original lattice must be reversed as well.
        """
        if factor == 0:
            raise InvalidParameterError("Cannot scale a grid by zero")
        if factor > 0:
            return Grid(x_min=factor * self.x_min, step=factor * self.step, n_points=self.n_points)
        return Grid(x_min=factor * self.x_max, step=-factor * self.step, n_points=self.n_points)

    def covers(self, x: np.ndarray) -> np.ndarray:
        """Mask of the points within half a step of the lattice span"""
        x = np.asarray(x, dtype=float)
        half = 0.5 * self.step
        return (x >= self.x_min - half) & (x <= self.x_max + half)

    def matches(self, other: "Grid", rtol: float = 1e-12) -> bool:
        return (
            self.n_points == other.n_points
            and abs(self.step - other.step) <= rtol * self.step
            and abs(self.x_min - other.x_min) <= rtol * max(abs(self.x_min), self.step)
        )


class _StateModel(BaseModel):
    model_config = ConfigDict(frozen=True)


# ---------------------------------------------------------------------------
# Pure one-mode states
# ---------------------------------------------------------------------------

class GroundGaussian(_StateModel):
    """Oscillator ground state pi^{-1/4} exp(-x^2/2)"""
    family: Literal["ground"] = "ground"

    @property
    def waist(self) -> float:
        return 1.0

    @property
    def label(self) -> str:
        return "ground"

    def wavefunction(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (np.pi ** -0.25 * np.exp(-x ** 2 / 2)).astype(complex)


class WaistGaussian(_StateModel):
    """Gaussian exp(-x^2/2 sigma^2) / (pi^{1/4} sigma^{1/2})"""
    family: Literal["gaussian"] = "gaussian"
    sigma: float = Field(gt=0, description="Gaussian waist")

    @property
    def waist(self) -> float:
        return self.sigma

    @property
    def label(self) -> str:
        return f"gaussian(sigma={self.sigma:g})"

    def wavefunction(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        amplitude = np.pi ** -0.25 / np.sqrt(self.sigma)
        return (amplitude * np.exp(-x ** 2 / (2 * self.sigma ** 2))).astype(complex)


class SqueezedCorrelated(_StateModel):
    """
    Squeezed and correlated Gaussian N exp(-a x^2 + b x).

    a = a1 + i a2 with a1 > 0, b = b_re + i b_im. The normalizing constant
    is the analytic Gaussian integral.
    """
    family: Literal["squeezed"] = "squeezed"
    a1: float = Field(gt=0, description="Real part of the quadratic coefficient")
    a2: float = Field(default=0.0, description="Imaginary part of the quadratic coefficient")
    b_re: float = Field(default=0.0, description="Real part of the linear coefficient")
    b_im: float = Field(default=0.0, description="Imaginary part of the linear coefficient")

    @classmethod
    def from_correlation(cls, correlation: float, a1: float = 0.5, b: complex = 0j) -> "SqueezedCorrelated":
        """State with the prescribed position-momentum correlation coefficient"""
        if not abs(correlation) < 1:
            raise InvariantViolationError(f"Correlation coefficient must satisfy |R| < 1, got {correlation}")
        a2 = -correlation * a1 / np.sqrt(1.0 - correlation ** 2)
        return cls(a1=a1, a2=float(a2), b_re=float(np.real(b)), b_im=float(np.imag(b)))

    @property
    def a(self) -> complex:
        return complex(self.a1, self.a2)

    @property
    def b(self) -> complex:
        return complex(self.b_re, self.b_im)

    @property
    def normalization(self) -> float:
        return (2 * self.a1 / np.pi) ** 0.25 * np.exp(-self.b_re ** 2 / (4 * self.a1))

    @property
    def label(self) -> str:
        return f"squeezed(a1={self.a1:g},a2={self.a2:g})"

    def wavefunction(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.normalization * np.exp(-self.a * x ** 2 + self.b * x)


class Soliton(_StateModel):
    """Bright soliton profile (2 l_z)^{-1/2} sech(x / l_z)"""
    family: Literal["soliton"] = "soliton"
    l_z: float = Field(gt=0, description="Soliton width")

    @property
    def label(self) -> str:
        return f"soliton(l_z={self.l_z:g})"

    def wavefunction(self, x: np.ndarray) -> np.ndarray:
        u = np.abs(np.asarray(x, dtype=float)) / self.l_z
        # sech written through exp(-|u|) so the tails underflow instead of overflowing
        sech = 2.0 * np.exp(-u) / (1.0 + np.exp(-2.0 * u))
        return (sech / np.sqrt(2.0 * self.l_z)).astype(complex)


class Sampled(_StateModel):
    """Complex wavefunction (or analytic signal) given on its own grid"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: Literal["sampled"] = "sampled"
    grid: Grid
    amplitudes: np.ndarray
    norm_tolerance: float = Field(default=1e-6, gt=0, description="Allowed |norm - 1|")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _as_complex_array(cls, value):
        array = np.array(value, dtype=complex)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check_shape_and_norm(self):
        if self.amplitudes.ndim != 1 or self.amplitudes.size != self.grid.n_points:
            raise DimensionError(
                f"Sampled state has {self.amplitudes.size} amplitudes for a grid of {self.grid.n_points} points"
            )
        if not np.all(np.isfinite(self.amplitudes)):
            raise InvariantViolationError("Sampled amplitudes must be finite")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.step)
        if abs(norm - 1.0) > self.norm_tolerance:
            raise InvariantViolationError(
                f"Sampled state norm {norm:.12g} differs from 1 by more than {self.norm_tolerance:g}"
            )
        return self

    @classmethod
    def from_components(cls, grid: Grid, re, im=None, norm_tolerance: float = 1e-6) -> "Sampled":
        re = np.asarray(re, dtype=float)
        im = np.zeros_like(re) if im is None else np.asarray(im, dtype=float)
        if re.shape != im.shape:
            raise DimensionError(f"re and im lengths differ: {re.size} vs {im.size}")
        return cls(grid=grid, amplitudes=re + 1j * im, norm_tolerance=norm_tolerance)

    @classmethod
    def normalized(cls, grid: Grid, values, norm_tolerance: float = 1e-6) -> "Sampled":
        """Sampled state from unnormalized samples, e.g. a recorded signal"""
        values = np.asarray(values, dtype=complex)
        norm = np.sum(np.abs(values) ** 2) * grid.step
        if norm <= 0:
            raise InvariantViolationError("Cannot normalize an all-zero signal")
        return cls(grid=grid, amplitudes=values / np.sqrt(norm), norm_tolerance=norm_tolerance)

    @property
    def label(self) -> str:
        return f"sampled(n={self.grid.n_points})"

    def wavefunction(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape == (self.grid.n_points,) and np.allclose(x, self.grid.points, rtol=0, atol=1e-12 * self.grid.step):
            return np.array(self.amplitudes)
        raise DimensionError("Sampled states can only be evaluated on their own grid")


PureState = Annotated[
    Union[GroundGaussian, WaistGaussian, SqueezedCorrelated, Soliton, Sampled],
    Field(discriminator="family"),
]

PURE_STATE_TYPES: Tuple[type, ...] = (GroundGaussian, WaistGaussian, SqueezedCorrelated, Soliton, Sampled)


# ---------------------------------------------------------------------------
# Mixed and Gaussian covariance states
# ---------------------------------------------------------------------------

class MixtureComponent(_StateModel):
    weight: float = Field(ge=0, description="Spectral weight lambda_k")
    state: PureState


class MixedState(_StateModel):
    """Spectral decomposition sum_k lambda_k |psi_k><psi_k|"""
    family: Literal["mixed"] = "mixed"
    components: List[MixtureComponent] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_weights(self):
        total = sum(c.weight for c in self.components)
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise InvariantViolationError(f"Mixture weights sum to {total!r}, expected 1")
        return self

    @classmethod
    def of(cls, *pairs: Tuple[float, object]) -> "MixedState":
        return cls(components=[MixtureComponent(weight=w, state=s) for w, s in pairs])

    @property
    def label(self) -> str:
        parts = ", ".join(f"{c.weight:g}*{c.state.label}" for c in self.components)
        return f"mixed({parts})"


class GaussianCovarianceState(_StateModel):
    """Gaussian state given by its quadrature covariance matrix (zero means)"""
    family: Literal["covariance"] = "covariance"
    sigma_qq: float = Field(gt=0)
    sigma_pp: float = Field(gt=0)
    sigma_qp: float = 0.0

    @model_validator(mode="after")
    def _check_uncertainty(self):
        det = self.sigma_qq * self.sigma_pp - self.sigma_qp ** 2
        if det < UNCERTAINTY_FLOOR - 1e-12:
            raise InvariantViolationError(
                f"Covariance determinant {det:.12g} violates the uncertainty bound 1/4"
            )
        return self

    @classmethod
    def thermal(cls, beta: float) -> "GaussianCovarianceState":
        """Thermal oscillator state at inverse temperature beta"""
        if not beta > 0:
            raise InvalidParameterError(f"beta must be positive, got {beta}")
        spread = 0.5 / np.tanh(beta / 2)
        return cls(sigma_qq=float(spread), sigma_pp=float(spread))

    @classmethod
    def squeezed_thermal(cls, squeezing: float, beta: float) -> "GaussianCovarianceState":
        """Thermal state squeezed by lambda: (lambda/2, 1/(2 lambda)) coth(beta/2)"""
        if not squeezing > 0:
            raise InvalidParameterError(f"squeezing must be positive, got {squeezing}")
        if not beta > 0:
            raise InvalidParameterError(f"beta must be positive, got {beta}")
        coth = 1.0 / np.tanh(beta / 2)
        return cls(sigma_qq=float(squeezing * coth / 2), sigma_pp=float(coth / (2 * squeezing)))

    def quadrature_variance(self, mu: float, nu: float) -> float:
        """Variance of X = mu q + nu p"""
        return mu ** 2 * self.sigma_qq + nu ** 2 * self.sigma_pp + 2 * mu * nu * self.sigma_qp

    @property
    def label(self) -> str:
        return f"covariance(qq={self.sigma_qq:g},pp={self.sigma_pp:g},qp={self.sigma_qp:g})"


OneModeState = Annotated[
    Union[GroundGaussian, WaistGaussian, SqueezedCorrelated, Soliton, Sampled, MixedState, GaussianCovarianceState],
    Field(discriminator="family"),
]

ModeState = Annotated[
    Union[GroundGaussian, WaistGaussian, SqueezedCorrelated, Soliton, Sampled, GaussianCovarianceState],
    Field(discriminator="family"),
]


class ProductState(_StateModel):
    """Tensor product of one-mode states"""
    family: Literal["product"] = "product"
    modes: List[ModeState] = Field(min_length=1)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def label(self) -> str:
        return " x ".join(m.label for m in self.modes)


StateSpec = Annotated[
    Union[
        GroundGaussian, WaistGaussian, SqueezedCorrelated, Soliton, Sampled,
        MixedState, GaussianCovarianceState, ProductState,
    ],
    Field(discriminator="family"),
]
