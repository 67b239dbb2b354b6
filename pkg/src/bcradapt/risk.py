"""Risk estimation via consequence/likelihood matrices.

Each bound service is rated per risk attribute (likelihood, consequence),
ratings are combined into a configuration-level pair (rounded likelihood sum,
maximum consequence), the pair indexes a risk matrix to yield a discrete
level, and attribute levels aggregate into the overall estimated risk by
weighted sum. Options whose risk exceeds a veto threshold can be ruled out
before selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .domain import Configuration, ConcreteService
from .errors import EmptyRatings, MissingRiskLevel, OutOfAxis, UnratedTier


@dataclass(frozen=True)
class RiskRating:
    """One metric-table row: numeric likelihood/consequence plus labels."""

    likelihood: float
    consequence: int
    likelihood_label: str = ""
    consequence_label: str = ""
    data_policy: str | None = None  # expected provider data policy, if pinned

    def __post_init__(self):
        if self.likelihood <= 0:
            raise ValueError("likelihood rating must be positive")
        if self.consequence < 1:
            raise ValueError("consequence rating must be >= 1")


@dataclass(frozen=True)
class RiskMetricTable:
    """Per-attribute rating rows keyed by SLA tier (or another ordinal key)."""

    risk_attribute: str
    rows: dict[str, RiskRating]


@dataclass(frozen=True)
class RiskMatrix:
    """Grid of risk levels indexed by (likelihood, consequence), both 1-based.

    Rows follow the likelihood axis, columns the consequence axis. Cells must
    be monotone non-decreasing along each axis and the (1, 1) corner must hold
    the grid minimum.
    """

    risk_attribute: str
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise ValueError("risk matrix must have at least one populated cell")
        width = len(self.cells[0])
        if any(len(row) != width for row in self.cells):
            raise ValueError("risk matrix rows must all have the same length")
        for row in self.cells:
            if any(b < a for a, b in zip(row, row[1:])):
                raise ValueError("risk matrix must be monotone along the consequence axis")
        for col in range(width):
            column = [row[col] for row in self.cells]
            if any(b < a for a, b in zip(column, column[1:])):
                raise ValueError("risk matrix must be monotone along the likelihood axis")
        if self.cells[0][0] != min(min(row) for row in self.cells):
            raise ValueError("risk matrix corner (1, 1) must hold the minimum level")

    @property
    def likelihood_axis_size(self) -> int:
        return len(self.cells)

    @property
    def consequence_axis_size(self) -> int:
        return len(self.cells[0])


def rate_service(service: ConcreteService, table: RiskMetricTable) -> tuple[float, int]:
    """Look up the (likelihood, consequence) pair for the service's SLA tier."""
    tier = service.provider.sla_tier.value
    if tier not in table.rows:
        raise UnratedTier(
            f"no {table.risk_attribute!r} rating for tier {tier!r} (service {service.id!r})"
        )
    row = table.rows[tier]
    return row.likelihood, row.consequence


def combine_likelihood(
    ratings: Sequence[float],
    axis_size: int | None = None,
    rounding: str = "half-up",
) -> int:
    """Round the sum of likelihood ratings and clamp it onto the matrix axis.

    Rounding is half-up by default ("half-even" is available for scenarios
    that prefer banker's rounding); sums are pre-rounded to 9 decimals so
    float noise cannot flip a midpoint.
    """
    if not ratings:
        raise EmptyRatings("likelihood combination needs at least one rating")
    total = round(math.fsum(ratings), 9)
    if rounding == "half-even":
        combined = round(total)
    else:
        combined = math.floor(total + 0.5)
    combined = max(1, combined)
    if axis_size is not None:
        combined = min(combined, axis_size)
    return combined


def combine_consequence(ratings: Sequence[int]) -> int:
    """The configuration-level consequence is the worst service consequence."""
    if not ratings:
        raise EmptyRatings("consequence combination needs at least one rating")
    return max(ratings)


def matrix_lookup(matrix: RiskMatrix, likelihood: int, consequence: int) -> int:
    if not 1 <= likelihood <= matrix.likelihood_axis_size:
        raise OutOfAxis(
            f"likelihood {likelihood} outside axis 1..{matrix.likelihood_axis_size}"
        )
    if not 1 <= consequence <= matrix.consequence_axis_size:
        raise OutOfAxis(
            f"consequence {consequence} outside axis 1..{matrix.consequence_axis_size}"
        )
    return matrix.cells[likelihood - 1][consequence - 1]


@dataclass(frozen=True)
class RiskAttribute:
    """One risk dimension: how options are rated and how much it weighs.

    `source` selects the rating route: "bindings" rates every bound service
    through the metric table; "external" reads per-option levels supplied in
    the scenario (with an optional default); "table" expects the caller to
    pass a precomputed level or (likelihood, consequence) pair, as the
    table-driven IoT scenario does.
    """

    id: str
    weight: float
    matrix: RiskMatrix
    source: str = "bindings"  # "bindings" | "external" | "table"
    metric_table: RiskMetricTable | None = None
    external_levels: dict[str, int] | None = None
    default_level: int | None = None

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("risk attribute weight must be non-negative")
        if self.source == "bindings" and self.metric_table is None:
            raise ValueError(f"attribute {self.id!r} rated from bindings needs a metric table")


@dataclass(frozen=True)
class RiskModel:
    attributes: tuple[RiskAttribute, ...]
    veto_threshold: float | None = None
    veto_mode: str = "overall"  # "overall" | "per-attribute"
    likelihood_rounding: str = "half-up"


@dataclass(frozen=True)
class AttributeRisk:
    """Per-attribute outcome: the combined pair (when rated) and the level."""

    likelihood: int | None
    consequence: int | None
    level: int


@dataclass(frozen=True)
class RiskEstimate:
    option_id: str
    per_attribute: dict[str, AttributeRisk]
    estimated_risk: float
    vetoed: bool


def estimate_risk(
    option: Configuration,
    model: RiskModel,
    attribute_levels: Mapping[str, int | tuple[int, int]] | None = None,
) -> RiskEstimate:
    """Estimate the overall risk of adopting `option`.

    `attribute_levels` supplies externally computed inputs per attribute id,
    either a final level or a (likelihood, consequence) pair to run through
    that attribute's matrix. Attributes without a supplied value fall back to
    their declared source.
    """
    supplied = dict(attribute_levels or {})
    per_attribute: dict[str, AttributeRisk] = {}
    total = 0.0
    for attr in model.attributes:
        if attr.id in supplied:
            value = supplied[attr.id]
            if isinstance(value, tuple):
                lc, cc = value
                level = matrix_lookup(attr.matrix, lc, cc)
                per_attribute[attr.id] = AttributeRisk(lc, cc, level)
            else:
                per_attribute[attr.id] = AttributeRisk(None, None, int(value))
        elif attr.source == "bindings":
            ratings = [rate_service(svc, attr.metric_table) for svc in option.bindings.values()]
            lc = combine_likelihood(
                [r[0] for r in ratings],
                axis_size=attr.matrix.likelihood_axis_size,
                rounding=model.likelihood_rounding,
            )
            cc = combine_consequence([r[1] for r in ratings])
            level = matrix_lookup(attr.matrix, lc, cc)
            per_attribute[attr.id] = AttributeRisk(lc, cc, level)
        elif attr.source == "external":
            level = (attr.external_levels or {}).get(option.id, attr.default_level)
            if level is None:
                raise MissingRiskLevel(
                    f"no {attr.id!r} level supplied for option {option.id!r}"
                )
            per_attribute[attr.id] = AttributeRisk(None, None, int(level))
        else:
            raise MissingRiskLevel(
                f"attribute {attr.id!r} expects a caller-supplied level for {option.id!r}"
            )
        total += per_attribute[attr.id].level * attr.weight

    if model.veto_threshold is None:
        vetoed = False
    elif model.veto_mode == "per-attribute":
        vetoed = any(a.level > model.veto_threshold for a in per_attribute.values())
    else:
        vetoed = total > model.veto_threshold
    return RiskEstimate(option.id, per_attribute, total, vetoed)


def risk_veto(estimates: Sequence[RiskEstimate], threshold: float) -> list[RiskEstimate]:
    """Keep only estimates whose overall risk does not exceed `threshold`."""
    return [e for e in estimates if e.estimated_risk <= threshold]
