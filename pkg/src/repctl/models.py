"""
Market primitives for the reputation-control problem.

Defines the price-per-unit growth models, the processing-rate families,
the reputation dynamics (geometric Brownian motion and stochastic
Nerlove-Arrow goodwill), and the validated `ControlProblem` container
that ties one optimization instance together.

All types are immutable after construction and every operation is a pure
function, so instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np

__all__ = [
    "PowerLawGrowth",
    "MinkSeifertGrowth",
    "LinearRate",
    "SigmoidRate",
    "GBM",
    "NerloveArrow",
    "GrowthModel",
    "ProcessingRate",
    "ReputationDynamics",
    "ControlProblem",
    "eval_growth",
    "processing_rate",
    "problem_to_dict",
    "problem_from_dict",
    "problem_dict_errors",
]


def _as_float_array(x):
    """Coerce to float ndarray, remembering whether the input was scalar."""
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _scalar_or_array(arr, scalar: bool):
    return float(arr) if scalar else arr


# ---------------------------------------------------------------------------
# Growth models: price per unit as a function of reputation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerLawGrowth:
    """Price per unit h(R) = R**gamma with exponent gamma in (0, 1]."""

    gamma: float = 1.0
    kind: ClassVar[str] = "PowerLaw"

    def __post_init__(self):
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma: must lie in (0, 1], got {self.gamma}")

    def price(self, R):
        """Evaluate h(R); R may be a scalar or an array, all entries >= 0."""
        arr, scalar = _as_float_array(R)
        if np.any(arr < 0.0):
            raise ValueError("R: reputation must be nonnegative")
        return _scalar_or_array(arr ** self.gamma, scalar)


@dataclass(frozen=True)
class MinkSeifertGrowth:
    """Price per unit h(R) = A + C * (1 - 1/ln(e + R)).

    A is the inherent value of the item (h(0) = A) and C the maximum
    reputation premium: h increases strictly from A toward A + C, which is
    approached but never attained.
    """

    A: float = 1.0
    C: float = 2.5
    kind: ClassVar[str] = "MinkSeifert"

    def __post_init__(self):
        if self.A < 0.0:
            raise ValueError(f"A: inherent value must be >= 0, got {self.A}")
        if self.C <= 0.0:
            # C = 0 would make h constant and break strict monotonicity.
            raise ValueError(f"C: reputation premium must be > 0, got {self.C}")

    def price(self, R):
        arr, scalar = _as_float_array(R)
        if np.any(arr < 0.0):
            raise ValueError("R: reputation must be nonnegative")
        out = self.A + self.C * (1.0 - 1.0 / np.log(np.e + arr))
        return _scalar_or_array(out, scalar)


GrowthModel = Union[PowerLawGrowth, MinkSeifertGrowth]


def eval_growth(model: GrowthModel, R):
    """Price per unit at reputation R for any growth model."""
    return model.price(R)


# ---------------------------------------------------------------------------
# Processing-rate families: units processed per unit time given control mu
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearRate:
    """p(mu) = 1 - mu for |mu| <= 1; processing (mu < 0) speeds sales up."""

    kind: ClassVar[str] = "Linear"

    def rate(self, mu):
        arr, scalar = _as_float_array(mu)
        if np.any(np.abs(arr) > 1.0):
            raise ValueError("mu: linear rate requires |mu| <= 1")
        return _scalar_or_array(1.0 - arr, scalar)


@dataclass(frozen=True)
class SigmoidRate:
    """Saturating rate p(mu) = M / (1 + (M - 1) * exp(c * mu)).

    Logistic family pinned to p(0) = 1 exactly, decreasing in mu, with
    p -> 0 as mu -> +inf and p -> M as mu -> -inf.  M > 1 is the maximum
    processing rate, c > 0 sets the slope.
    """

    M: float = 3.0
    c: float = 1.0
    kind: ClassVar[str] = "Sigmoid"

    def __post_init__(self):
        if not self.M > 1.0:
            raise ValueError(f"M: max processing rate must be > 1, got {self.M}")
        if not self.c > 0.0:
            raise ValueError(f"c: slope must be > 0, got {self.c}")

    def rate(self, mu):
        arr, scalar = _as_float_array(mu)
        with np.errstate(over="ignore"):
            out = self.M / (1.0 + (self.M - 1.0) * np.exp(self.c * arr))
        return _scalar_or_array(out, scalar)


ProcessingRate = Union[LinearRate, SigmoidRate]


def processing_rate(rate: ProcessingRate, mu):
    """Dimensionless sales rate at control mu for any rate family."""
    return rate.rate(mu)


# ---------------------------------------------------------------------------
# Reputation dynamics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GBM:
    """Multiplicative reputation dR = R (mu dt + sigma dB); stays positive."""

    sigma: float
    kind: ClassVar[str] = "GBM"

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError(f"sigma: volatility must be > 0, got {self.sigma}")


@dataclass(frozen=True)
class NerloveArrow:
    """Goodwill dynamics dR = (mu - kappa R) dt + sigma dB.

    Additive noise lets reputation hit zero; with `absorbing_at_zero` set
    (the default) paths are stopped at the first hitting time of 0.
    """

    kappa: float
    sigma: float
    absorbing_at_zero: bool = True
    kind: ClassVar[str] = "NerloveArrow"

    def __post_init__(self):
        if self.kappa < 0.0:
            raise ValueError(f"kappa: decay rate must be >= 0, got {self.kappa}")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma: volatility must be > 0, got {self.sigma}")


ReputationDynamics = Union[GBM, NerloveArrow]


# ---------------------------------------------------------------------------
# Control problem
# ---------------------------------------------------------------------------

def _problem_field_errors(horizon, rho, epsilon) -> list[str]:
    errors = []
    if not horizon > 0.0:
        errors.append(f"horizon: must be > 0, got {horizon}")
    if rho < 0.0:
        errors.append(f"rho: discount rate must be >= 0, got {rho}")
    # epsilon = 0 is the degenerate no-control instance; epsilon < 1 keeps
    # the linear rate 1 - mu strictly positive.
    if not (0.0 <= epsilon < 1.0):
        errors.append(f"epsilon: must lie in [0, 1), got {epsilon}")
    return errors


@dataclass(frozen=True)
class ControlProblem:
    """One fully specified optimization instance.

    Attributes
    ----------
    horizon : time T > 0 at which revenue accrual stops
    rho : discount rate per unit time, >= 0
    epsilon : control bound; admissible controls satisfy |mu| <= epsilon < 1
    dynamics, growth, processing : the model components
    """

    horizon: float
    rho: float
    epsilon: float
    dynamics: ReputationDynamics
    growth: GrowthModel
    processing: ProcessingRate

    def __post_init__(self):
        errors = _problem_field_errors(self.horizon, self.rho, self.epsilon)
        if errors:
            raise ValueError("; ".join(errors))

    @property
    def analytic_regime(self) -> str:
        """'power-law-gbm' when the separable solution applies, else 'none'."""
        if (
            isinstance(self.dynamics, GBM)
            and isinstance(self.growth, PowerLawGrowth)
            and isinstance(self.processing, LinearRate)
        ):
            return "power-law-gbm"
        return "none"


# ---------------------------------------------------------------------------
# JSON document round-trip
# ---------------------------------------------------------------------------

_TOP_KEYS = {"horizon", "rho", "epsilon", "dynamics", "growth", "processing"}
_DYNAMICS_KEYS = {"GBM": {"kind", "sigma"}, "NerloveArrow": {"kind", "sigma", "kappa"}}
_GROWTH_KEYS = {"PowerLaw": {"kind", "gamma"}, "MinkSeifert": {"kind", "A", "C"}}
_PROCESSING_KEYS = {"Linear": {"kind"}, "Sigmoid": {"kind", "M", "c"}}


def problem_to_dict(problem: ControlProblem) -> dict:
    """Serialize to the canonical JSON document layout."""
    dyn = problem.dynamics
    if isinstance(dyn, GBM):
        dynamics = {"kind": "GBM", "sigma": dyn.sigma}
    else:
        dynamics = {"kind": "NerloveArrow", "sigma": dyn.sigma, "kappa": dyn.kappa}
    grow = problem.growth
    if isinstance(grow, PowerLawGrowth):
        growth = {"kind": "PowerLaw", "gamma": grow.gamma}
    else:
        growth = {"kind": "MinkSeifert", "A": grow.A, "C": grow.C}
    proc = problem.processing
    if isinstance(proc, LinearRate):
        processing = {"kind": "Linear"}
    else:
        processing = {"kind": "Sigmoid", "M": proc.M, "c": proc.c}
    return {
        "horizon": problem.horizon,
        "rho": problem.rho,
        "epsilon": problem.epsilon,
        "dynamics": dynamics,
        "growth": growth,
        "processing": processing,
    }


def _section_errors(doc: dict, section: str, kind_table: dict) -> list[str]:
    errors = []
    sub = doc.get(section)
    if not isinstance(sub, dict):
        errors.append(f"{section}: must be an object")
        return errors
    kind = sub.get("kind")
    if kind not in kind_table:
        errors.append(
            f"{section}.kind: expected one of {sorted(kind_table)}, got {kind!r}"
        )
        return errors
    allowed = kind_table[kind]
    for key in sub:
        if key not in allowed:
            errors.append(f"{section}.{key}: unknown key")
    for key in allowed - {"kind"}:
        if key not in sub:
            errors.append(f"{section}.{key}: missing")
        elif not isinstance(sub[key], (int, float)) or isinstance(sub[key], bool):
            errors.append(f"{section}.{key}: must be a number")
    return errors


def problem_dict_errors(doc) -> list[str]:
    """Validate a problem document; returns [] iff `problem_from_dict` succeeds."""
    if not isinstance(doc, dict):
        return ["problem: must be an object"]
    errors = []
    for key in doc:
        if key not in _TOP_KEYS:
            errors.append(f"{key}: unknown key")
    for key in ("horizon", "rho", "epsilon"):
        if key not in doc:
            errors.append(f"{key}: missing")
        elif not isinstance(doc[key], (int, float)) or isinstance(doc[key], bool):
            errors.append(f"{key}: must be a number")
    errors += _section_errors(doc, "dynamics", _DYNAMICS_KEYS)
    errors += _section_errors(doc, "growth", _GROWTH_KEYS)
    errors += _section_errors(doc, "processing", _PROCESSING_KEYS)
    if errors:
        return errors

    errors += _problem_field_errors(doc["horizon"], doc["rho"], doc["epsilon"])
    # Component invariants, reported with the offending field.
    for section, builder in (
        ("dynamics", _dynamics_from_dict),
        ("growth", _growth_from_dict),
        ("processing", _processing_from_dict),
    ):
        try:
            builder(doc[section])
        except ValueError as exc:
            errors.append(f"{section}.{exc}")
    return errors


def _dynamics_from_dict(sub: dict) -> ReputationDynamics:
    if sub["kind"] == "GBM":
        return GBM(sigma=float(sub["sigma"]))
    return NerloveArrow(kappa=float(sub["kappa"]), sigma=float(sub["sigma"]))


def _growth_from_dict(sub: dict) -> GrowthModel:
    if sub["kind"] == "PowerLaw":
        return PowerLawGrowth(gamma=float(sub["gamma"]))
    return MinkSeifertGrowth(A=float(sub["A"]), C=float(sub["C"]))


def _processing_from_dict(sub: dict) -> ProcessingRate:
    if sub["kind"] == "Linear":
        return LinearRate()
    return SigmoidRate(M=float(sub["M"]), c=float(sub["c"]))


def problem_from_dict(doc: dict) -> ControlProblem:
    """Build a validated `ControlProblem` from its JSON document."""
    errors = problem_dict_errors(doc)
    if errors:
        raise ValueError("invalid problem document: " + "; ".join(errors))
    return ControlProblem(
        horizon=float(doc["horizon"]),
        rho=float(doc["rho"]),
        epsilon=float(doc["epsilon"]),
        dynamics=_dynamics_from_dict(doc["dynamics"]),
        growth=_growth_from_dict(doc["growth"]),
        processing=_processing_from_dict(doc["processing"]),
    )
