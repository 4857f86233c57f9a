"""
Suite runner for the verification checks

Evaluates each CheckSpec of a VerificationSuite into a CheckResult.
Identities report margin = -residual; inequalities report lhs - rhs.
A check passes when margin >= -tolerance. Pipeline errors raised inside
a check (for example an entropy refused for a tampered density) turn
into failed results instead of aborting the suite.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from ..errors import InvalidParameterError, TomographyError
from ..states.state_schema import ProductState
from ..states.wavefunctions import correlation_coefficient, phase_space_moments
from ..tomography.config import DEFAULT_CONFIG, TomographyConfig
from ..tomography.entropy import (
    additivity_check,
    default_t_axis,
    multimode_ground_entropy,
    optical_entropy,
    position_momentum_entropies,
    product_entropy,
    symplectic_entropy,
)
from ..tomography.tomogram import fresnel_tomogram, homogeneity_rescale, symplectic_tomogram
from .check_schema import CheckKind, CheckSpec, SuiteTemplates, VerificationSuite
from .uncertainty import (
    LN_PI_E,
    check_multimode,
    check_pairwise,
    check_r_dressed,
    gaussian_uncertainty_function,
    uncertainty_function,
)


logger = logging.getLogger(__name__)

# Tolerances for identities (residual bounds); inequalities use config tol_f
IDENTITY_TOLERANCES: Dict[CheckKind, float] = {
    CheckKind.NORMALIZATION: 1e-6,
    CheckKind.HOMOGENEITY: 1e-5,
    CheckKind.FRESNEL_SCALING: 1e-5,
    CheckKind.ADDITIVITY: 1e-5,
    CheckKind.R_INDEPENDENCE: 1e-6,
    CheckKind.GROUND_EQUALITY: 1e-8,   # per mode
    CheckKind.MINIMUM_UNCERTAINTY: 1e-10,
    CheckKind.CORRELATED_SUM: 1e-5,
    CheckKind.THERMAL_MARGIN: 1e-6,
    CheckKind.GAUSSIAN_CLOSED_FORM: 1e-5,
}
FORCED_FFT_EQUALITY_TOLERANCE = 1e-5


@dataclass
class CheckResult:
    """Outcome of a single check"""
    check: str
    kind: CheckKind
    margin: Optional[float]
    tolerance: float
    passed: bool
    detail: str = ""
    error: Optional[Dict[str, str]] = None

    def to_dict(self) -> dict:
        data = {
            "check": self.check,
            "kind": self.kind.value,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "detail": self.detail,
        }
        if self.error is not None:
            data["error"] = self.error
        return data


@dataclass
class SuiteEvaluationResult:
    """Results of a suite, in check order"""
    suite: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "n_checks": len(self.results),
            "n_failed": len(self.failures),
            "checks": [r.to_dict() for r in self.results],
        }


class SuiteRunner:
    """
    Evaluates verification suites.

    Each CheckKind maps to a _check_* method returning (margin, tolerance,
    detail); the runner applies the verdict and isolates failures.
    """

    def __init__(self, config: Optional[TomographyConfig] = None, suite: Optional[VerificationSuite] = None):
        self.config = config or DEFAULT_CONFIG
        self.suite = suite or SuiteTemplates.default_suite()
        self._dispatch: Dict[CheckKind, Callable] = {
            CheckKind.NORMALIZATION: self._check_normalization,
            CheckKind.HOMOGENEITY: self._check_homogeneity,
            CheckKind.FRESNEL_SCALING: self._check_fresnel_scaling,
            CheckKind.ADDITIVITY: self._check_additivity,
            CheckKind.POSITION_MOMENTUM: self._check_position_momentum,
            CheckKind.PAIRWISE: self._check_pairwise,
            CheckKind.R_INDEPENDENCE: self._check_r_independence,
            CheckKind.R_DRESSED: self._check_r_dressed,
            CheckKind.MULTIMODE: self._check_multimode,
            CheckKind.GROUND_EQUALITY: self._check_ground_equality,
            CheckKind.MINIMUM_UNCERTAINTY: self._check_minimum_uncertainty,
            CheckKind.CORRELATED_SUM: self._check_correlated_sum,
            CheckKind.THERMAL_MARGIN: self._check_thermal_margin,
            CheckKind.UNCERTAINTY_FUNCTION: self._check_uncertainty_function,
            CheckKind.GAUSSIAN_CLOSED_FORM: self._check_gaussian_closed_form,
        }

    def evaluate(self, suite: Optional[VerificationSuite] = None) -> SuiteEvaluationResult:
        suite = suite or self.suite
        logger.info(f"🧪 Running suite '{suite.name}' with {len(suite.checks)} checks")
        evaluation = SuiteEvaluationResult(suite=suite.name)
        for check in suite.checks:
            result = self.run_check(check)
            if result.passed:
                logger.debug(f"✅ {check.name}: margin {result.margin:.3g}")
            else:
                logger.error(f"❌ {check.name}: margin {result.margin}, tolerance {result.tolerance:g} {result.detail}")
            evaluation.results.append(result)
        logger.info(f"Suite '{suite.name}': {len(evaluation.failures)} of {len(evaluation.results)} checks failed")
        return evaluation

    def run_check(self, check: CheckSpec) -> CheckResult:
        handler = self._dispatch.get(check.kind)
        if handler is None:
            raise InvalidParameterError(f"No handler for check kind {check.kind}")
        default_tolerance = check.tolerance if check.tolerance is not None else self._default_tolerance(check)
        try:
            margin, tolerance, detail = handler(check, default_tolerance)
        except TomographyError as e:
            return CheckResult(
                check=check.name,
                kind=check.kind,
                margin=None,
                tolerance=default_tolerance,
                passed=False,
                detail=str(e),
                error=e.to_dict(),
            )
        passed = bool(np.isfinite(margin)) and margin >= -tolerance
        return CheckResult(check=check.name, kind=check.kind, margin=float(margin), tolerance=tolerance,
                           passed=passed, detail=detail)

    def _default_tolerance(self, check: CheckSpec) -> float:
        if check.kind == CheckKind.GROUND_EQUALITY:
            if self.config.force_fft:
                return FORCED_FFT_EQUALITY_TOLERANCE
            return IDENTITY_TOLERANCES[check.kind] * check.state.n_modes
        if check.kind == CheckKind.MULTIMODE:
            return self.config.effective_tol_f * check.state.n_modes
        return IDENTITY_TOLERANCES.get(check.kind, self.config.effective_tol_f)

    # ------------------------------------------------------------------
    # Tomogram identities
    # ------------------------------------------------------------------

    def _check_normalization(self, check: CheckSpec, tolerance: float):
        p = check.params
        tom = symplectic_tomogram(check.state, p["mu"], p["nu"], config=self.config)
        return -tom.normalization_defect, tolerance, f"mass={tom.mass:.12g}"

    def _check_homogeneity(self, check: CheckSpec, tolerance: float):
        p = check.params
        lam = p["lam"]
        tom = symplectic_tomogram(check.state, p["mu"], p["nu"], config=self.config)
        rescaled = homogeneity_rescale(tom, lam)
        direct = symplectic_tomogram(check.state, lam * p["mu"], lam * p["nu"], grid=rescaled.grid, config=self.config)
        residual = float(np.sum(np.abs(rescaled.density - direct.density)) * rescaled.grid.step)
        return -residual, tolerance, f"L1={residual:.3g}"

    def _check_fresnel_scaling(self, check: CheckSpec, tolerance: float):
        p = check.params
        mu, nu = p["mu"], p["nu"]
        tom = symplectic_tomogram(check.state, mu, nu, config=self.config)
        grid = tom.grid.scaled(1.0 / mu)
        fresnel = fresnel_tomogram(check.state, nu / mu, grid=grid, config=self.config)
        expected = abs(mu) * tom.density
        if mu < 0:
            expected = expected[::-1]
        residual = float(np.sum(np.abs(fresnel.density - expected)) * grid.step)
        return -residual, tolerance, f"L1={residual:.3g}"

    def _check_additivity(self, check: CheckSpec, tolerance: float):
        p = check.params
        residual = additivity_check(check.state, p["mu"], p["nu"], p["lam"], self.config)
        return -residual, tolerance, f"residual={residual:.3g}"

    # ------------------------------------------------------------------
    # Uncertainty relations
    # ------------------------------------------------------------------

    def _check_position_momentum(self, check: CheckSpec, tolerance: float):
        s_x, s_p = position_momentum_entropies(check.state, self.config)
        total = s_x.value + s_p.value
        return total - LN_PI_E, tolerance, f"S_x+S_p={total:.12g}"

    def _check_pairwise(self, check: CheckSpec, tolerance: float):
        relation = check_pairwise(check.state, check.params["t"], self.config)
        return relation.margin, tolerance, f"lhs={relation.lhs:.12g}"

    def _check_r_independence(self, check: CheckSpec, tolerance: float):
        p = check.params
        r, t = p["r"], p["t"]
        optical = optical_entropy(check.state, t, self.config).value
        dressed = symplectic_entropy(check.state, r * math.cos(t), r * math.sin(t), self.config).value - math.log(r)
        residual = abs(optical - dressed)
        return -residual, tolerance, f"residual={residual:.3g}"

    def _check_r_dressed(self, check: CheckSpec, tolerance: float):
        p = check.params
        relation = check_r_dressed(check.state, p["mu"], p["nu"], p["t"], self.config)
        return relation.margin, tolerance, f"lhs={relation.lhs:.12g}"

    def _check_multimode(self, check: CheckSpec, tolerance: float):
        p = check.params
        relation = check_multimode(check.state, p["mu"], p["nu"], p["t"], self.config)
        return relation.margin, tolerance, f"lhs={relation.lhs:.12g}"

    def _check_ground_equality(self, check: CheckSpec, tolerance: float):
        state: ProductState = check.state
        p = check.params
        relation = check_multimode(state, p["mu"], p["nu"], p["t"], self.config)
        entropy_gap = abs(product_entropy(state, p["mu"], p["nu"], self.config).value
                          - multimode_ground_entropy(p["mu"], p["nu"]))
        residual = max(abs(relation.margin), entropy_gap)
        return -residual, tolerance, f"margin={relation.margin:.3g} entropy_gap={entropy_gap:.3g}"

    def _check_minimum_uncertainty(self, check: CheckSpec, tolerance: float):
        product = phase_space_moments(check.state).uncertainty_product
        residual = abs(product - 0.25)
        return -residual, tolerance, f"sigma_x^2 sigma_p^2={product:.15g}"

    def _check_correlated_sum(self, check: CheckSpec, tolerance: float):
        r = correlation_coefficient(check.state)
        s_x, s_p = position_momentum_entropies(check.state, self.config)
        expected = LN_PI_E - 0.5 * math.log(1 - r ** 2)
        residual = abs(s_x.value + s_p.value - expected)
        return -residual, tolerance, f"R={r:.6g} residual={residual:.3g}"

    def _check_thermal_margin(self, check: CheckSpec, tolerance: float):
        beta = check.params["beta"]
        relation = check_pairwise(check.state, 0.0, self.config)
        expected = math.log(1.0 / math.tanh(beta / 2))
        residual = abs(relation.margin - expected)
        return -residual, tolerance, f"margin={relation.margin:.12g} expected={expected:.12g}"

    def _check_uncertainty_function(self, check: CheckSpec, tolerance: float):
        p = check.params
        report = uncertainty_function(
            check.state, r=p.get("r", 1.0), t_axis=p.get("t_axis"), config=self.config,
        )
        return report.min_f, tolerance, f"min_F={report.min_f:.6g} at t={report.argmin_t:.6g}"

    def _check_gaussian_closed_form(self, check: CheckSpec, tolerance: float):
        points = check.params.get("t_points", self.config.t_points)
        t_axis = default_t_axis(points)
        numeric = uncertainty_function(check.state, t_axis=t_axis, config=self.config.with_overrides(force_fft=True))
        closed = [gaussian_uncertainty_function(check.state.waist, t) for t in t_axis]
        residual = max(abs(a - b) for a, b in zip(numeric.f_values, closed))
        return -residual, tolerance, f"max |F_numeric - F_closed| = {residual:.3g}"
