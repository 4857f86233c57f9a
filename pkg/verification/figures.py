"""
Data behind the two uncertainty-function figures: Gaussian waists (closed
form against the numeric path) and soliton widths (numeric only).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..states.state_schema import Soliton, WaistGaussian
from ..tomography.config import DEFAULT_CONFIG, TomographyConfig
from ..tomography.entropy import default_t_axis
from .uncertainty import UncertaintyReport, gaussian_uncertainty_function, uncertainty_function


logger = logging.getLogger(__name__)

GAUSSIAN_WAISTS = (2.0, 4.0)
SOLITON_WIDTHS = (2.0, 3.0, 4.0)


@dataclass
class GaussianCurve:
    sigma: float
    t_axis: List[float]
    closed_form: List[float]
    numeric: List[float]

    @property
    def max_discrepancy(self) -> float:
        return max(abs(a - b) for a, b in zip(self.closed_form, self.numeric))

    def rows(self) -> List[dict]:
        return [
            {"sigma": self.sigma, "t": t, "F_closed": c, "F_numeric": n}
            for t, c, n in zip(self.t_axis, self.closed_form, self.numeric)
        ]

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "t": self.t_axis,
            "F_closed": self.closed_form,
            "F_numeric": self.numeric,
            "max_discrepancy": self.max_discrepancy,
        }


@dataclass
class SolitonCurve:
    l_z: float
    report: UncertaintyReport

    def rows(self) -> List[dict]:
        return [{"l_z": self.l_z, "t": t, "F": f} for t, f in zip(self.report.t_axis, self.report.f_values)]

    def to_dict(self) -> dict:
        return {
            "l_z": self.l_z,
            "t": self.report.t_axis,
            "F": self.report.f_values,
            "min_F": self.report.min_f,
            "max_F": self.report.max_f,
            "argmin_t": self.report.argmin_t,
            "pass": self.report.passed,
        }


def gaussian_curves(
    sigmas: Sequence[float] = GAUSSIAN_WAISTS,
    t_axis: Optional[Sequence[float]] = None,
    config: Optional[TomographyConfig] = None,
) -> List[GaussianCurve]:
    """F_G(t) from the closed form and from forced-FFT quadrature"""
    config = config or DEFAULT_CONFIG
    t_axis = list(t_axis) if t_axis is not None else default_t_axis(config.t_points)
    numeric_config = config.with_overrides(force_fft=True)
    curves = []
    for sigma in sigmas:
        report = uncertainty_function(WaistGaussian(sigma=sigma), t_axis=t_axis, config=numeric_config)
        closed = [gaussian_uncertainty_function(sigma, t) for t in t_axis]
        curve = GaussianCurve(sigma=sigma, t_axis=t_axis, closed_form=closed, numeric=report.f_values)
        logger.info(f"Gaussian sigma={sigma:g}: max discrepancy {curve.max_discrepancy:.3g}")
        curves.append(curve)
    return curves


def soliton_curves(
    widths: Sequence[float] = SOLITON_WIDTHS,
    t_axis: Optional[Sequence[float]] = None,
    config: Optional[TomographyConfig] = None,
) -> List[SolitonCurve]:
    """Numeric F_S(t) per soliton width"""
    config = config or DEFAULT_CONFIG
    curves = []
    for l_z in widths:
        report = uncertainty_function(Soliton(l_z=l_z), t_axis=t_axis, config=config)
        logger.info(f"Soliton l_z={l_z:g}: F in [{report.min_f:.6g}, {report.max_f:.6g}]")
        curves.append(SolitonCurve(l_z=l_z, report=report))
    return curves
