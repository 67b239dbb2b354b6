"""Utility response curves and estimated benefit of adaptation options.

Utilities are carried as percentages in [0, 100]. The overall estimated
benefit of an option is the weighted sum of its utility gains over the
current configuration, one term per adaptation goal.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Sequence

from .errors import MissingAttribute

if TYPE_CHECKING:
    from .domain import Configuration, UncertaintyState
    from .simulator import SimulationParams, WorkflowModel


@dataclass(frozen=True)
class UtilityResponseCurve:
    """Piecewise-linear stakeholder preference over one quality attribute.

    Between declared points the utility is linearly interpolated; outside the
    declared range it clamps to the nearest endpoint utility.
    """

    quality_attribute: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("utility curve needs at least 2 points")
        xs = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve points must be strictly ascending in attribute value")
        if any(not 0.0 <= u <= 100.0 for _, u in self.points):
            raise ValueError("curve utilities must be in [0, 100]")


@dataclass(frozen=True)
class AdaptationGoal:
    """A quality requirement: a utility curve plus its relative weight.

    `utility_floor`, when set, marks the utility below which the goal counts
    as violated (used by the on-goal-violation adaptation trigger).
    """

    quality_attribute: str
    curve: UtilityResponseCurve
    weight: float
    utility_floor: float | None = None

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("goal weight must be non-negative")


@dataclass(frozen=True)
class BenefitEstimate:
    option_id: str
    per_attribute_value: dict[str, float | None]
    per_attribute_utility: dict[str, float]
    estimated_benefit: float


def eval_utility_curve(curve: UtilityResponseCurve, value: float) -> float:
    """Evaluate `curve` at `value`: exact at declared points, linear between
    them, clamped to the endpoint utilities outside the declared range."""
    points = curve.points
    if value <= points[0][0]:
        return points[0][1]
    if value >= points[-1][0]:
        return points[-1][1]
    xs = [p[0] for p in points]
    i = bisect_right(xs, value)
    x0, u0 = points[i - 1]
    x1, u1 = points[i]
    if value == x0:
        return u0
    return u0 + (value - x0) * (u1 - u0) / (x1 - x0)


def estimated_benefit(
    option_utilities: Mapping[str, float],
    current_utilities: Mapping[str, float],
    goals: Sequence[AdaptationGoal],
) -> float:
    """Weighted sum of utility differences between an option and the current
    configuration, one term per goal. Full precision, no rounding."""
    total = 0.0
    for goal in goals:
        attr = goal.quality_attribute
        if attr not in option_utilities or attr not in current_utilities:
            raise MissingAttribute(f"utility mapping lacks attribute {attr!r}")
        total += (option_utilities[attr] - current_utilities[attr]) * goal.weight
    return total


def estimate_option_qualities(
    option: Configuration,
    workflow: WorkflowModel,
    uncertainty: UncertaintyState,
    params: SimulationParams,
) -> dict[str, float]:
    """Estimate an option's quality attributes by simulating the workflow.

    Returns the failure rate in percent and the mean resource usage per
    request under the keys "failureRate" and "resourceUsage".
    """
    from .simulator import monte_carlo_estimate

    result = monte_carlo_estimate(workflow, option, uncertainty, params)
    return {
        "failureRate": result.failure_rate_percent,
        "resourceUsage": result.mean_resource_usage,
    }
