"""Shared vocabulary: providers, services, configurations, uncertainty, scenarios.

Every type here is an immutable value object; instances can be shared freely
across threads. The mapping fields are plain dicts for ergonomics and are
treated as frozen by convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from .errors import EmptyAdaptationSpace, RoleSetMismatch

if TYPE_CHECKING:
    from .benefit import AdaptationGoal
    from .cost import CostModel
    from .decision import DecisionPolicy
    from .desirability import DesirabilityPolicy
    from .iot_tables import TableScenarioData
    from .risk import RiskModel
    from .simulator import WorkflowModel


class SlaTier(str, Enum):
    GOLD = "Gold"
    SILVER = "Silver"
    BRONZE = "Bronze"
    UNLABELED = "Unlabeled"


class DataPolicy(str, Enum):
    STORED_LOCAL = "StoredLocal"
    STORED_WITH_PARTNERS = "StoredWithPartners"
    SHARED_WITH_PARTNERS = "SharedWithPartners"
    UNSPECIFIED = "Unspecified"


@dataclass(frozen=True)
class ServiceProvider:
    """A third party offering concrete services under an SLA tier."""

    id: str
    sla_tier: SlaTier
    data_policy: DataPolicy = DataPolicy.UNSPECIFIED


@dataclass(frozen=True)
class ConcreteService:
    """One provider's implementation of an abstract role."""

    id: str
    abstract_role: str
    provider: ServiceProvider
    failure_probability: float
    resource_usage: float

    def __post_init__(self):
        if not 0.0 <= self.failure_probability <= 1.0:
            raise ValueError(f"failure_probability of {self.id} must be in [0, 1]")
        if self.resource_usage < 0:
            raise ValueError(f"resource_usage of {self.id} must be >= 0")


@dataclass(frozen=True)
class Configuration:
    """A total binding of abstract roles to concrete services.

    `observed_qualities` holds measured attribute values and is normally set
    only on the running configuration. `params` carries additional settings
    for scenarios whose options are parameter vectors rather than service
    bindings (e.g. the bundled IoT network scenario).
    """

    id: str
    bindings: dict[str, ConcreteService] = field(default_factory=dict)
    observed_qualities: dict[str, float] | None = None
    params: dict[str, str] = field(default_factory=dict)

    def binding_ids(self) -> dict[str, str]:
        return {role: svc.id for role, svc in self.bindings.items()}

    def same_settings(self, other: Configuration) -> bool:
        """True when both configurations bind the same services and params."""
        return self.binding_ids() == other.binding_ids() and self.params == other.params


@dataclass(frozen=True)
class UncertaintyState:
    """Snapshot of uncertain quantities the feedback loop tracks.

    `branch_probabilities` overrides workflow branch-edge probabilities by
    edge id; `reliability_drift` adds a signed delta to a service failure
    probability; `levels` carries ordinal ratings (e.g. noise/jamming levels)
    for table-driven scenarios.
    """

    branch_probabilities: dict[str, float] = field(default_factory=dict)
    reliability_drift: dict[str, float] = field(default_factory=dict)
    levels: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class EstimationSpec:
    """How option qualities are obtained: workflow simulation, values pinned
    in the scenario file, or table lookups."""

    mode: str = "simulation"  # "simulation" | "pinned" | "table"
    utilities: dict[str, dict[str, float]] | None = None  # config id -> attr -> percent
    qualities: dict[str, dict[str, float]] | None = None  # config id -> attr -> raw value


@dataclass(frozen=True)
class AdaptationSpaceSpec:
    """Either an explicit option list or the full cartesian role/service product."""

    cartesian: bool = False
    options: tuple[Configuration, ...] = ()


@dataclass(frozen=True)
class ScenarioSpec:
    """Wires every model kind together for one managed system."""

    name: str
    role_set: tuple[str, ...]
    providers: dict[str, ServiceProvider]
    services: dict[str, ConcreteService]
    workflow: WorkflowModel | None
    goals: tuple[AdaptationGoal, ...]
    cost_model: CostModel | None
    risk_model: RiskModel
    desirability: DesirabilityPolicy
    decision: DecisionPolicy
    estimation: EstimationSpec
    initial_configuration: Configuration
    adaptation_space: AdaptationSpaceSpec
    uncertainty: UncertaintyState = field(default_factory=UncertaintyState)
    table_data: TableScenarioData | None = None
    schema_version: int = 1


def enumerate_adaptation_space(spec: ScenarioSpec) -> list[Configuration]:
    """Return the adaptation options of `spec` in a deterministic order.

    An explicit option list is returned verbatim. With the cartesian flag the
    full product over role-compatible services is generated, ordered
    lexicographically by (role order, service id); option ids are derived by
    joining the bound service ids with '+'.
    """
    if spec.adaptation_space.cartesian:
        per_role: list[list[ConcreteService]] = []
        for role in spec.role_set:
            candidates = sorted(
                (s for s in spec.services.values() if s.abstract_role == role),
                key=lambda s: s.id,
            )
            if not candidates:
                raise EmptyAdaptationSpace(f"no services implement role {role!r}")
            per_role.append(candidates)
        options = [
            Configuration(
                id="+".join(svc.id for svc in combo),
                bindings=dict(zip(spec.role_set, combo)),
            )
            for combo in itertools.product(*per_role)
        ]
    else:
        options = list(spec.adaptation_space.options)
    if not options:
        raise EmptyAdaptationSpace("adaptation space is empty")
    return options


def diff_configurations(
    current: Configuration, option: Configuration
) -> set[tuple[str, ConcreteService, ConcreteService]]:
    """Return (role, old service, new service) for every rebinding between
    `current` and `option`. Empty iff both bind identical services."""
    if set(current.bindings) != set(option.bindings):
        raise RoleSetMismatch(
            f"configurations {current.id!r} and {option.id!r} cover different role sets"
        )
    return {
        (role, current.bindings[role], option.bindings[role])
        for role in current.bindings
        if current.bindings[role].id != option.bindings[role].id
    }
