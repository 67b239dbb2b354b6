"""One-off adaptation cost: per-(provider, role) entries plus an attribute registry.

Cost is charged once per newly bound service, looked up by the incoming
provider and role; unchanged roles contribute nothing. The attribute registry
catalogues the kinds of cost a scenario may quantify (resources, overhead,
economic) and can be extended.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .domain import Configuration, diff_configurations
from .errors import DuplicateAttribute, MissingCostEntry


class CostType(str, Enum):
    RESOURCES = "Resources"
    OVERHEAD = "Overhead"
    ECONOMIC = "Economic"


@dataclass(frozen=True)
class CostAttribute:
    id: str
    cost_type: CostType
    metric: str


# Built-in cost attribute taxonomy; scenarios may register more.
_BUILTIN_ATTRIBUTES = (
    CostAttribute("communication", CostType.RESOURCES, "Required bandwidth"),
    CostAttribute("computation", CostType.RESOURCES, "Required processing resources"),
    CostAttribute("storage", CostType.RESOURCES, "Required memory"),
    CostAttribute("power", CostType.RESOURCES, "Required energy"),
    CostAttribute("availability", CostType.OVERHEAD, "Degree of reduced service"),
    CostAttribute("performance", CostType.OVERHEAD, "Degree of degraded user experience"),
    CostAttribute("security", CostType.OVERHEAD, "Cost to manage exposed vulnerability"),
    CostAttribute("financial", CostType.ECONOMIC, "Monetary price"),
)


def default_cost_attribute_registry() -> dict[str, CostAttribute]:
    """Fresh registry preloaded with the built-in attribute taxonomy."""
    return {attr.id: attr for attr in _BUILTIN_ATTRIBUTES}


def register_cost_attribute(
    registry: dict[str, CostAttribute], attribute: CostAttribute
) -> dict[str, CostAttribute]:
    if attribute.id in registry:
        raise DuplicateAttribute(f"cost attribute {attribute.id!r} already registered")
    registry[attribute.id] = attribute
    return registry


@dataclass(frozen=True)
class CostModel:
    """Adaptation cost per (provider, role), keyed by the incoming service."""

    attribute: CostAttribute
    entries: dict[tuple[str, str], float]  # (provider id, role) -> cost units

    def __post_init__(self):
        if any(c < 0 for c in self.entries.values()):
            raise ValueError("cost entries must be non-negative")


@dataclass(frozen=True)
class CostEstimate:
    option_id: str
    per_change: tuple[tuple[str, float], ...]  # (role, cost) for each rebinding
    estimated_cost: float


def estimate_cost(
    current: Configuration, option: Configuration, model: CostModel
) -> CostEstimate:
    """Sum the model entries for every service the option newly binds."""
    changes = sorted(diff_configurations(current, option), key=lambda c: c[0])
    per_change = []
    for role, _old, new in changes:
        key = (new.provider.id, role)
        if key not in model.entries:
            raise MissingCostEntry(f"no cost entry for provider {key[0]!r}, role {key[1]!r}")
        per_change.append((role, model.entries[key]))
    return CostEstimate(
        option_id=option.id,
        per_change=tuple(per_change),
        estimated_cost=sum(c for _, c in per_change),
    )
