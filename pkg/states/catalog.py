"""
Shipped state catalog used by the verification suite and the CLI figures.
"""

from typing import Dict

from .state_schema import (
    GaussianCovarianceState,
    GroundGaussian,
    MixedState,
    SqueezedCorrelated,
    Soliton,
    WaistGaussian,
)


class StateCatalog:
    """Pre-built states for common scenarios"""

    @staticmethod
    def ground() -> GroundGaussian:
        return GroundGaussian()

    @staticmethod
    def gaussian(sigma: float = 2.0) -> WaistGaussian:
        return WaistGaussian(sigma=sigma)

    @staticmethod
    def squeezed(correlation: float = 0.6) -> SqueezedCorrelated:
        return SqueezedCorrelated.from_correlation(correlation)

    @staticmethod
    def soliton(l_z: float = 2.0) -> Soliton:
        return Soliton(l_z=l_z)

    @staticmethod
    def thermal(beta: float = 1.0) -> GaussianCovarianceState:
        return GaussianCovarianceState.thermal(beta)

    @staticmethod
    def squeezed_thermal(squeezing: float = 2.0, beta: float = 1.0) -> GaussianCovarianceState:
        return GaussianCovarianceState.squeezed_thermal(squeezing, beta)

    @staticmethod
    def mixture() -> MixedState:
        """0.6 ground state + 0.4 soliton of width 2"""
        return MixedState.of((0.6, GroundGaussian()), (0.4, Soliton(l_z=2.0)))

    @staticmethod
    def all() -> Dict[str, object]:
        return {
            "ground": StateCatalog.ground(),
            "gaussian": StateCatalog.gaussian(),
            "squeezed": StateCatalog.squeezed(),
            "soliton": StateCatalog.soliton(),
            "thermal": StateCatalog.thermal(),
            "squeezed_thermal": StateCatalog.squeezed_thermal(),
            "mixture": StateCatalog.mixture(),
        }
