"""Desirability of an option: scaled benefit balanced against scaled cost.

Two methods are supported: value-for-cost (scaled benefit divided by scaled
cost) and net benefit (scaled benefit minus scaled cost). Scaling functions
let benefit and cost be brought into a comparable unit; the threshold
multiplier form T + (v - T) * x amplifies the distance from a threshold and
is applied to all inputs, below the threshold as well as above it.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from .errors import ZeroScaledCost


class ScalingKind(str, Enum):
    IDENTITY = "Identity"
    THRESHOLD_MULTIPLIER = "ThresholdMultiplier"


@dataclass(frozen=True)
class ScalingFunction:
    kind: ScalingKind = ScalingKind.IDENTITY
    threshold: float = 0.0
    multiplier: float = 1.0

    def __post_init__(self):
        if self.multiplier <= 0:
            raise ValueError("scaling multiplier must be positive")


IDENTITY_SCALING = ScalingFunction(ScalingKind.IDENTITY)


class DesirabilityMethod(str, Enum):
    VALUE_FOR_COST = "ValueForCost"
    NET_BENEFIT = "NetBenefit"


@dataclass(frozen=True)
class DesirabilityPolicy:
    """Desirability method plus the scaling applied to each estimate."""

    method: DesirabilityMethod = DesirabilityMethod.VALUE_FOR_COST
    benefit_scaling: ScalingFunction = IDENTITY_SCALING
    cost_scaling: ScalingFunction = IDENTITY_SCALING


@dataclass(frozen=True)
class DesirabilityEstimate:
    option_id: str
    method: DesirabilityMethod
    estimated_desirability: float


def apply_scaling(f: ScalingFunction, value: float) -> float:
    if f.kind is ScalingKind.IDENTITY:
        return value
    if f.multiplier == 1.0:
        # T + (v - T) * 1 is exactly v; skip the arithmetic so it stays exact
        # in floating point too.
        return value
    return f.threshold + (value - f.threshold) * f.multiplier


def desirability(
    estimated_benefit: float,
    estimated_cost: float,
    benefit_scaling: ScalingFunction = IDENTITY_SCALING,
    cost_scaling: ScalingFunction = IDENTITY_SCALING,
    method: DesirabilityMethod = DesirabilityMethod.VALUE_FOR_COST,
    option_id: str = "",
) -> DesirabilityEstimate:
    """Combine scaled benefit and cost into one desirability number.

    Raises ZeroScaledCost for value-for-cost when the scaled cost is zero.
    All arithmetic is kept at full float precision; rounding is a display
    concern only (see `display_value`).
    """
    scaled_benefit = apply_scaling(benefit_scaling, estimated_benefit)
    scaled_cost = apply_scaling(cost_scaling, estimated_cost)
    if method is DesirabilityMethod.VALUE_FOR_COST:
        if scaled_cost == 0:
            raise ZeroScaledCost("value-for-cost undefined: scaled cost is zero")
        value = scaled_benefit / scaled_cost
    else:
        value = scaled_benefit - scaled_cost
    return DesirabilityEstimate(option_id, method, value)


def display_value(value: float, places: int = 2) -> str:
    """Round half-up to `places` decimals for display (6.125 -> '6.13')."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(str(value)).quantize(quantum, rounding=ROUND_HALF_UP))
