"""Table-driven IoT network scenario: lookups instead of simulation.

The bundled IoT case describes a mote network whose configurations are
(power setting, schedule) pairs. Stakeholders supplied expected energy and
packet loss per configuration and uncertainty level, a cost table for setting
changes, and 3-point likelihood/consequence scales for the risk of service
interruption under jamming, so qualities, costs, and risk ratings all come
straight from tables.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .cost import CostEstimate
from .errors import UnknownConfiguration, ValidationError


@dataclass(frozen=True)
class IoTSettings:
    power: str
    schedule: str


@dataclass(frozen=True)
class TableScenarioData:
    configurations: dict[str, IoTSettings]
    energy: dict[str, float]  # config -> expected energy (mC)
    packet_loss_noise: dict[str, dict[str, float]]  # config -> level -> %
    packet_loss_jamming: dict[str, dict[str, float]]  # config -> level -> %
    power_change_cost: dict[str, float]  # schedule -> cost of a power change
    schedule_switch_cost: dict[str, float]  # "S1->S2" style key -> cost
    likelihood_by_jamming: dict[str, int]  # jamming level -> likelihood rating
    consequence_loss_bounds: tuple[float, ...]  # ascending upper bounds

    def validate(self) -> None:
        levels = set()
        for table in (self.packet_loss_noise, self.packet_loss_jamming):
            for per_level in table.values():
                levels.update(per_level)
        for config_id in self.configurations:
            for name, table in (
                ("energy", self.energy),
                ("packetLossNoise", self.packet_loss_noise),
                ("packetLossJamming", self.packet_loss_jamming),
            ):
                if config_id not in table:
                    raise ValidationError(
                        f"configuration {config_id!r} missing from {name}",
                        f"/appendixBTables/{name}",
                    )
            for level in levels:
                for name, table in (
                    ("packetLossNoise", self.packet_loss_noise),
                    ("packetLossJamming", self.packet_loss_jamming),
                ):
                    if level not in table[config_id]:
                        raise ValidationError(
                            f"level {level!r} missing for configuration {config_id!r}",
                            f"/appendixBTables/{name}/{config_id}",
                        )
        if list(self.consequence_loss_bounds) != sorted(self.consequence_loss_bounds):
            raise ValidationError(
                "consequence bounds must be ascending", "/appendixBTables/consequenceLossBounds"
            )


def _settings(data: TableScenarioData, config_id: str) -> IoTSettings:
    if config_id not in data.configurations:
        raise UnknownConfiguration(f"no table rows for configuration {config_id!r}")
    return data.configurations[config_id]


def lookup_table_qualities(
    data: TableScenarioData, config_id: str, noise_level: str, jamming_level: str
) -> dict[str, float]:
    """Expected energy and total packet loss (noise + jamming) for one
    configuration under the given uncertainty levels."""
    _settings(data, config_id)
    try:
        noise_loss = data.packet_loss_noise[config_id][noise_level]
        jamming_loss = data.packet_loss_jamming[config_id][jamming_level]
    except KeyError as exc:
        raise ValueError(f"unknown uncertainty level {exc.args[0]!r}") from exc
    return {
        "energy": data.energy[config_id],
        "packetLoss": noise_loss + jamming_loss,
    }


def adaptation_cost(
    data: TableScenarioData, current_id: str, option_id: str
) -> CostEstimate:
    """Cost of moving between two network configurations.

    A schedule switch is charged by direction; a power change is charged at
    the rate of the schedule the network ends up on.
    """
    current = _settings(data, current_id)
    option = _settings(data, option_id)
    per_change: list[tuple[str, float]] = []
    if current.schedule != option.schedule:
        key = f"{current.schedule}->{option.schedule}"
        if key not in data.schedule_switch_cost:
            raise ValidationError(
                f"no switch cost for {key!r}", "/appendixBTables/adaptationCosts"
            )
        per_change.append(("schedule", data.schedule_switch_cost[key]))
    if current.power != option.power:
        schedule = option.schedule
        if schedule not in data.power_change_cost:
            raise ValidationError(
                f"no power-change cost for schedule {schedule!r}",
                "/appendixBTables/adaptationCosts",
            )
        per_change.append(("power", data.power_change_cost[schedule]))
    return CostEstimate(
        option_id=option_id,
        per_change=tuple(per_change),
        estimated_cost=sum(c for _, c in per_change),
    )


def interruption_rating(
    data: TableScenarioData, config_id: str, jamming_level: str
) -> tuple[int, int]:
    """(likelihood, consequence) for service interruption under jamming.

    Likelihood follows the jamming level's rating; consequence buckets the
    configuration's jamming packet loss by the ascending upper bounds (a loss
    equal to a bound falls in that bound's bucket).
    """
    _settings(data, config_id)
    if jamming_level not in data.likelihood_by_jamming:
        raise ValueError(f"unknown jamming level {jamming_level!r}")
    likelihood = data.likelihood_by_jamming[jamming_level]
    loss = data.packet_loss_jamming[config_id][jamming_level]
    consequence = bisect_left(list(data.consequence_loss_bounds), loss) + 1
    return likelihood, consequence
