"""
Parses state specifications from JSON documents or CLI shorthand.

JSON:
    {"family": "soliton", "params": {"l_z": 2}}
    {"family": "sampled", "grid": {"x_min": -8, "step": 0.0625, "n_points": 256}, "re": [...], "im": [...]}
    {"family": "mixed", "components": [{"weight": 0.5, "state": {...}}, ...]}
    {"family": "product", "modes": [{...}, ...]}

Shorthand:
    ground, gaussian:sigma=2, soliton:lz=2, squeezed:R=0.6,
    squeezed:a1=0.5,a2=-0.3, thermal:beta=1, squeezed-thermal:lambda=2,beta=1,
    covariance:qq=1,pp=0.5,qp=0.1
"""

import json
import logging
from typing import Any, Dict, Set

from ..errors import ParseError
from .state_schema import (
    GaussianCovarianceState,
    Grid,
    GroundGaussian,
    MixedState,
    MixtureComponent,
    ProductState,
    Sampled,
    SqueezedCorrelated,
    Soliton,
    WaistGaussian,
)


logger = logging.getLogger(__name__)

PARAM_ALIASES = {
    "lz": "l_z",
    "qq": "sigma_qq",
    "pp": "sigma_pp",
    "qp": "sigma_qp",
    "lambda": "squeezing",
    "correlation": "R",
}

_ANALYTIC_FAMILIES = {
    "ground": GroundGaussian,
    "gaussian": WaistGaussian,
    "squeezed": SqueezedCorrelated,
    "soliton": Soliton,
    "covariance": GaussianCovarianceState,
}


class StateSpecParser:
    """Builds state models from user-supplied specifications"""

    def __init__(self, sampled_norm_tolerance: float = 1e-6):
        self.sampled_norm_tolerance = sampled_norm_tolerance

    def parse(self, text: str):
        """JSON document when text starts with '{', shorthand otherwise"""
        text = (text or "").strip()
        if not text:
            raise ParseError("Empty state specification")
        if text.startswith("{"):
            return self.parse_json(text)
        return self.parse_shorthand(text)

    def parse_json(self, text: str):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"Invalid state JSON: {e}") from e
        logger.debug(f"Parsed state document: {document}")
        return self.from_document(document)

    def parse_shorthand(self, text: str):
        family, _, rest = text.partition(":")
        params: Dict[str, Any] = {}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                raise ParseError(f"Expected key=value in '{item}'")
            try:
                params[key.strip()] = float(value)
            except ValueError as e:
                raise ParseError(f"Parameter '{key.strip()}' is not a number: '{value}'") from e
        return self.from_document({"family": family.strip(), "params": params})

    def from_document(self, document: Any):
        if not isinstance(document, dict):
            raise ParseError("A state document must be a JSON object")
        family = str(document.get("family", "")).strip().lower().replace("_", "-")
        params = {PARAM_ALIASES.get(k, k): v for k, v in (document.get("params") or {}).items()}

        try:
            if family == "sampled":
                return self._sampled(document)
            if family == "mixed":
                return MixedState(components=[
                    MixtureComponent(weight=c["weight"], state=self.from_document(c["state"]))
                    for c in document["components"]
                ])
            if family == "product":
                return ProductState(modes=[self.from_document(m) for m in document["modes"]])
            if family == "thermal":
                self._check_keys(family, params, {"beta"})
                return GaussianCovarianceState.thermal(params["beta"])
            if family == "squeezed-thermal":
                self._check_keys(family, params, {"squeezing", "beta"})
                return GaussianCovarianceState.squeezed_thermal(params["squeezing"], params["beta"])
            if family == "squeezed" and "R" in params:
                self._check_keys(family, params, {"R", "a1"})
                return SqueezedCorrelated.from_correlation(params["R"], a1=params.get("a1", 0.5))
        except KeyError as e:
            raise ParseError(f"State family '{family}' is missing field {e}") from e
        except TypeError as e:
            raise ParseError(f"Malformed '{family}' state document: {e}") from e

        cls = _ANALYTIC_FAMILIES.get(family)
        if cls is None:
            raise ParseError(f"Unknown state family '{family}'")
        self._check_keys(family, params, set(cls.model_fields) - {"family"})
        return cls(**params)

    @staticmethod
    def _check_keys(family: str, params: Dict[str, Any], allowed: Set[str]):
        unknown = sorted(set(params) - allowed)
        if unknown:
            raise ParseError(
                f"Unknown parameter(s) {', '.join(unknown)} for state family '{family}'; "
                f"expected {', '.join(sorted(allowed)) or 'none'}"
            )

    def _sampled(self, document: Dict[str, Any]) -> Sampled:
        grid = Grid(**document["grid"])
        return Sampled.from_components(
            grid,
            document["re"],
            document.get("im"),
            norm_tolerance=document.get("norm_tolerance", self.sampled_norm_tolerance),
        )


def parse_state(text: str, sampled_norm_tolerance: float = 1e-6):
    return StateSpecParser(sampled_norm_tolerance).parse(text)
