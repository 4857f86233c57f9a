"""
Check schema for the verification suite

A suite is an ordered list of checks. Each check names a relation, the
state it runs on and the parameters it needs; the runner turns it into a
CheckResult with a margin (passed <=> margin >= -tolerance).
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from ..errors import InvalidParameterError
from ..states.catalog import StateCatalog
from ..states.state_schema import GroundGaussian, ProductState


class CheckKind(str, Enum):
    """Relations the runner knows how to evaluate"""
    NORMALIZATION = "normalization"                  # integral of w equals 1
    HOMOGENEITY = "homogeneity"                      # w(lX, lmu, lnu) = w(X, mu, nu)/|l|
    FRESNEL_SCALING = "fresnel_scaling"              # w_F(X/mu, nu/mu) = |mu| w(X, mu, nu)
    ADDITIVITY = "additivity"                        # S(lmu, lnu) = S(mu, nu) + ln|l|
    POSITION_MOMENTUM = "position_momentum"          # S_x + S_p >= ln(pi e)
    PAIRWISE = "pairwise"                            # S(t) + S(t + pi/2) >= ln(pi e)
    R_INDEPENDENCE = "r_independence"                # S(t) = S(r cos t, r sin t) - ln r
    R_DRESSED = "r_dressed"                          # dressed relation, equal to pairwise margin
    MULTIMODE = "multimode"                          # sum over modes >= N ln(pi e)
    GROUND_EQUALITY = "ground_equality"              # multimode ground state saturates
    MINIMUM_UNCERTAINTY = "minimum_uncertainty"      # sigma_x^2 sigma_p^2 = 1/4
    CORRELATED_SUM = "correlated_sum"                # S_x + S_p = ln(pi e) - 1/2 ln(1 - R^2)
    THERMAL_MARGIN = "thermal_margin"                # pairwise margin = ln coth(beta/2)
    UNCERTAINTY_FUNCTION = "uncertainty_function"    # min_t F >= 0
    GAUSSIAN_CLOSED_FORM = "gaussian_closed_form"    # numeric F matches the closed form


@dataclass
class CheckSpec:
    """
    A single check.

    Example:
        CheckSpec(
            name="homogeneity-soliton",
            kind=CheckKind.HOMOGENEITY,
            state=Soliton(l_z=2),
            params={"mu": 0.8, "nu": 0.6, "lam": -2.0},
        )
    """
    name: str
    kind: CheckKind
    state: Any
    params: Dict[str, Any] = field(default_factory=dict)
    tolerance: Optional[float] = None  # None: the kind's default
    description: Optional[str] = None


@dataclass
class VerificationSuite:
    """Ordered collection of checks"""
    name: str
    checks: List[CheckSpec] = field(default_factory=list)
    description: Optional[str] = None

    def add_check(self, check: CheckSpec):
        self.checks.append(check)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "checks": [
                {
                    "name": c.name,
                    "kind": c.kind.value,
                    "state": c.state.label,
                    "params": {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in c.params.items()},
                    "tolerance": c.tolerance,
                    "description": c.description,
                }
                for c in self.checks
            ],
        }


# Suite Builder - fluent API for assembling suites
class SuiteBuilder:
    """Fluent API for building verification suites"""

    def __init__(self, name: str):
        self.suite = VerificationSuite(name=name)
        self._current: Optional[CheckSpec] = None

    def with_description(self, description: str) -> 'SuiteBuilder':
        self.suite.description = description
        return self

    def check(self, name: str, kind: CheckKind) -> 'SuiteBuilder':
        """Start a new check"""
        if self._current:
            self.end_check()
        self._current = CheckSpec(name=name, kind=kind, state=None)
        return self

    def on(self, state) -> 'SuiteBuilder':
        """State the current check runs on"""
        if self._current:
            self._current.state = state
        return self

    def at(self, **params: Any) -> 'SuiteBuilder':
        """Parameters of the current check"""
        if self._current:
            self._current.params.update(params)
        return self

    def tolerance(self, tolerance: float) -> 'SuiteBuilder':
        if self._current:
            self._current.tolerance = tolerance
        return self

    def description(self, desc: str) -> 'SuiteBuilder':
        if self._current:
            self._current.description = desc
        return self

    def end_check(self) -> 'SuiteBuilder':
        """Finish the current check and add it to the suite"""
        if self._current:
            if self._current.state is None:
                raise InvalidParameterError(f"Check '{self._current.name}' has no state")
            self.suite.add_check(self._current)
            self._current = None
        return self

    # Shortcuts for the common relations

    def normalization(self, name: str, state, mu: float, nu: float) -> 'SuiteBuilder':
        return self.check(name, CheckKind.NORMALIZATION).on(state).at(mu=mu, nu=nu).end_check()

    def homogeneity(self, name: str, state, mu: float, nu: float, lam: float) -> 'SuiteBuilder':
        return self.check(name, CheckKind.HOMOGENEITY).on(state).at(mu=mu, nu=nu, lam=lam).end_check()

    def additivity(self, name: str, state, mu: float, nu: float, lam: float) -> 'SuiteBuilder':
        return self.check(name, CheckKind.ADDITIVITY).on(state).at(mu=mu, nu=nu, lam=lam).end_check()

    def pairwise(self, name: str, state, t: float) -> 'SuiteBuilder':
        return self.check(name, CheckKind.PAIRWISE).on(state).at(t=t).end_check()

    def build(self) -> VerificationSuite:
        if self._current:
            self.end_check()
        return self.suite


# Common suite templates
class SuiteTemplates:
    """Pre-built suites over the shipped state catalog"""

    LAMBDAS = (-2.0, 0.5, 3.0)

    @staticmethod
    def tomogram_identities(states: Optional[Dict[str, Any]] = None) -> VerificationSuite:
        """Normalization, homogeneity and additivity for every state"""
        states = states or StateCatalog.all()
        builder = SuiteBuilder("tomogram-identities").with_description(
            "Normalization, homogeneity and entropy additivity"
        )
        mu, nu = math.cos(0.3), math.sin(0.3)
        for key, state in states.items():
            builder.normalization(f"normalization-{key}", state, mu, nu)
            for lam in SuiteTemplates.LAMBDAS:
                builder.homogeneity(f"homogeneity-{key}-{lam:g}", state, 0.8, 0.6, lam)
                builder.additivity(f"additivity-{key}-{lam:g}", state, math.cos(1.0), math.sin(1.0), lam)
        return builder.build()

    @staticmethod
    def uncertainty_relations(states: Optional[Dict[str, Any]] = None) -> VerificationSuite:
        """Position-momentum and pairwise relations for every state"""
        states = states or StateCatalog.all()
        builder = SuiteBuilder("uncertainty-relations").with_description(
            "Entropic uncertainty relations on the state catalog"
        )
        for key, state in states.items():
            builder.check(f"position-momentum-{key}", CheckKind.POSITION_MOMENTUM).on(state).end_check()
            builder.pairwise(f"pairwise-{key}", state, 0.4)
        return builder.build()

    @staticmethod
    def multimode() -> VerificationSuite:
        ground = ProductState(modes=[GroundGaussian()] * 3)
        mixed = ProductState(modes=[StateCatalog.gaussian(2.0), StateCatalog.soliton(3.0)])
        return (
            SuiteBuilder("multimode")
            .with_description("Product-state relations")
            .check("ground-equality-3", CheckKind.GROUND_EQUALITY)
            .on(ground)
            .at(mu=[1.0, 2.0, 0.5], nu=[0.0, 1.0, -1.5], t=[0.2, 0.9, 2.1])
            .end_check()
            .check("multimode-gaussian-soliton", CheckKind.MULTIMODE)
            .on(mixed)
            .at(mu=[1.0, 1.0], nu=[0.5, 1.0], t=[0.3, 1.1])
            .end_check()
            .build()
        )

    @staticmethod
    def default_suite() -> VerificationSuite:
        """Every relation the runner checks, on the shipped catalog"""
        states = StateCatalog.all()
        builder = SuiteBuilder("default").with_description("Full verification suite on the shipped state catalog")

        for part in (
            SuiteTemplates.tomogram_identities(states),
            SuiteTemplates.uncertainty_relations(states),
            SuiteTemplates.multimode(),
        ):
            for check in part.checks:
                builder.suite.add_check(check)

        soliton = states["soliton"]
        return (
            builder
            .check("fresnel-scaling-soliton", CheckKind.FRESNEL_SCALING).on(soliton).at(mu=2.0, nu=0.7).end_check()
            .check("fresnel-scaling-squeezed", CheckKind.FRESNEL_SCALING).on(states["squeezed"]).at(mu=2.0, nu=0.7).end_check()
            .check("r-independence-soliton", CheckKind.R_INDEPENDENCE).on(soliton).at(r=math.sqrt(2.0), t=0.7).end_check()
            .check("r-dressed-ground", CheckKind.R_DRESSED).on(states["ground"]).at(mu=2.0, nu=0.0, t=0.6).end_check()
            .check("r-dressed-soliton", CheckKind.R_DRESSED).on(soliton).at(mu=1.0, nu=1.0, t=0.5).end_check()
            .check("minimum-uncertainty-ground", CheckKind.MINIMUM_UNCERTAINTY).on(states["ground"]).end_check()
            .check("minimum-uncertainty-gaussian", CheckKind.MINIMUM_UNCERTAINTY).on(states["gaussian"]).end_check()
            .check("correlated-sum-squeezed", CheckKind.CORRELATED_SUM).on(states["squeezed"]).end_check()
            .check("thermal-margin", CheckKind.THERMAL_MARGIN).on(states["thermal"]).at(beta=1.0).end_check()
            .check("uncertainty-function-soliton", CheckKind.UNCERTAINTY_FUNCTION).on(soliton).at(r=1.0).end_check()
            .check("uncertainty-function-mixture", CheckKind.UNCERTAINTY_FUNCTION).on(states["mixture"]).at(r=1.0).end_check()
            .check("gaussian-closed-form-sigma2", CheckKind.GAUSSIAN_CLOSED_FORM).on(states["gaussian"]).at(t_points=64).end_check()
            .build()
        )

    @staticmethod
    def soliton_curves(widths: Sequence[float] = (2.0, 3.0, 4.0)) -> VerificationSuite:
        builder = SuiteBuilder("soliton-curves").with_description("Nonnegativity of F for soliton widths")
        for l_z in widths:
            builder.check(f"uncertainty-function-soliton-{l_z:g}", CheckKind.UNCERTAINTY_FUNCTION) \
                .on(StateCatalog.soliton(l_z)).at(r=1.0).end_check()
        return builder.build()
