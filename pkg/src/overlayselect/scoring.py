"""Interface scoring: SAW, weighted product, cost score function and the
battery-aware proposed weight.

All per-parameter values are benefit oriented (larger is better).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError, StructuralError, ValidationError
from .interfaces import PARAMETERS

SCALING_TOL = 1e-9

DEFAULT_SCALING = {
    "cost": 0.4,
    "throughput": 0.2,
    "qos_qoe": 0.09,
    "cell_coverage": 0.05,
    "security": 0.08,
    "signal_strength": 0.08,
    "power_consumption": 0.1,
}


@dataclass(frozen=True)
class ScalingFactors:
    values: dict[str, float]

    def __post_init__(self):
        unknown = set(self.values) - set(PARAMETERS)
        if unknown:
            raise StructuralError(f"unknown parameters in scaling factors: {sorted(unknown)}")
        if any(not math.isfinite(v) or v < 0 for v in self.values.values()):
            raise ValidationError("scaling factors must be finite and >= 0")
        total = math.fsum(self.values.values())
        if abs(total - 1.0) > SCALING_TOL:
            raise ValidationError(f"scaling factors sum to {total!r}, expected 1")

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def __iter__(self):
        return iter(self.values)

    @classmethod
    def defaults(cls) -> "ScalingFactors":
        return cls(dict(DEFAULT_SCALING))


@dataclass(frozen=True)
class ParameterVector:
    values: dict[str, float]

    def __post_init__(self):
        for name, v in self.values.items():
            if not math.isfinite(v) or v < 0:
                raise ValidationError(f"parameter {name}={v!r} must be finite and >= 0")

    def __getitem__(self, name: str) -> float:
        return self.values[name]


@dataclass(frozen=True)
class PriorityGrouping:
    """Split of the parameters into a high-priority and a low-priority group."""

    high: frozenset[str]
    low: frozenset[str]
    combine_high: float = 1.0
    combine_low: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "high", frozenset(self.high))
        object.__setattr__(self, "low", frozenset(self.low))
        if self.high & self.low:
            raise StructuralError(f"parameters in both groups: {sorted(self.high & self.low)}")


def scale_weight_ratios(
    ratios: Mapping[str, Mapping[str, float]],
) -> dict[str, ParameterVector]:
    """Turn ``{parameter: {iface: ratio}}`` into per-interface scaled values.

    Each parameter is divided by its sum over interfaces, so the scaled values
    of one parameter add up to 1.
    """
    scaled: dict[str, dict[str, float]] = {}
    for param, per_iface in ratios.items():
        if any(not (math.isfinite(r) and r > 0) for r in per_iface.values()):
            raise ValidationError(f"ratios for {param!r} must be positive, got {dict(per_iface)}")
        total = math.fsum(per_iface.values())
        for iface, r in per_iface.items():
            scaled.setdefault(iface, {})[param] = r / total
    return {iface: ParameterVector(v) for iface, v in scaled.items()}


def _check_lengths(weights: Sequence[float], scaled: Sequence[float]) -> None:
    if len(weights) != len(scaled):
        raise StructuralError(f"{len(weights)} weights but {len(scaled)} values")
    if not weights:
        raise StructuralError("at least one criterion is required")


def saw_score(mask: int, weights: Sequence[float], scaled: Sequence[float]) -> float:
    """Simple additive weighting, normalised by the weight total."""
    _check_lengths(weights, scaled)
    total = math.fsum(weights)
    if total == 0:
        raise DomainError("weights sum to zero")
    return mask * math.fsum(w * r for w, r in zip(weights, scaled)) / total


def wp_score(mask: int, weights: Sequence[float], scaled: Sequence[float]) -> float:
    """Weighted product. A zero value under a positive exponent gives 0."""
    _check_lengths(weights, scaled)
    if any(r < 0 for r in scaled):
        raise DomainError("weighted product needs non-negative values")
    prod = 1.0
    for w, r in zip(weights, scaled):
        if w == 0:
            continue
        if r == 0:
            return 0.0
        prod *= r**w
    return mask * prod


def score_function(
    w_s: float, w_p: float, w_c: float, f_s: float, f_p: float, f_c: float
) -> float:
    if min(w_s, w_p, w_c) < 0:
        raise DomainError("score-function weights must be >= 0")
    terms = (w_s * f_s, w_p * f_p, w_c * f_c)
    if not all(math.isfinite(t) for t in terms):
        raise DomainError("score-function inputs must be finite")
    return math.fsum(terms)


def weighted_sum(params: ParameterVector, scaling: ScalingFactors) -> float:
    missing = set(scaling) - set(params.values)
    if missing:
        raise StructuralError(f"parameter vector lacks {sorted(missing)}")
    return math.fsum(params[m] * scaling[m] for m in scaling)


def proposed_weight(params: ParameterVector, scaling: ScalingFactors, lp: float) -> float:
    """Scaled parameter sum divided by ``log10(1 + lp)``.

    ``lp`` is 1 with a healthy battery and the interface's power rank otherwise,
    so power-hungry interfaces are penalised only when the battery is low.
    """
    if not lp >= 1:
        raise DomainError(f"battery level factor must be >= 1, got {lp!r}")
    return weighted_sum(params, scaling) / math.log10(1.0 + lp)


def grouped_weight(
    params: ParameterVector, scaling: ScalingFactors, grouping: PriorityGrouping
) -> float:
    stray = set(scaling) - (grouping.high | grouping.low)
    if stray:
        raise StructuralError(f"parameters in neither group: {sorted(stray)}")
    high = math.fsum(params[m] * scaling[m] for m in scaling if m in grouping.high)
    low = math.fsum(params[m] * scaling[m] for m in scaling if m in grouping.low)
    return grouping.combine_high * high + grouping.combine_low * low
