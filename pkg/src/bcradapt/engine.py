"""One-shot Analyze/Plan pipeline: estimate every option, then select.

For each option in the adaptation space this computes quality estimates
(simulated, pinned, or table-driven per the scenario's estimation mode),
utilities, estimated benefit against the current configuration, adaptation
cost, desirability, and risk; applies the veto; and hands the surviving
(option, desirability, risk) triples to the selection policy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .benefit import BenefitEstimate, estimated_benefit, eval_utility_curve
from .cost import CostEstimate, estimate_cost
from .decision import Decision, select
from .desirability import DesirabilityEstimate, DesirabilityMethod, desirability
from .domain import Configuration, ScenarioSpec, UncertaintyState, enumerate_adaptation_space
from .errors import NoViableOption, ValidationError
from .iot_tables import adaptation_cost, interruption_rating, lookup_table_qualities
from .risk import RiskEstimate, estimate_risk
from .simulator import SimulationParams, derive_seed, monte_carlo_estimate


@dataclass(frozen=True)
class OptionAssessment:
    """Everything estimated for one adaptation option."""

    option: Configuration
    qualities: dict[str, float] | None
    utilities: dict[str, float]
    benefit: BenefitEstimate
    cost: CostEstimate
    desirability: DesirabilityEstimate
    risk: RiskEstimate


@dataclass(frozen=True)
class AnalysisResult:
    current_id: str
    current_utilities: dict[str, float]
    current_risk: RiskEstimate | None
    assessments: tuple[OptionAssessment, ...]
    vetoed: tuple[str, ...]


def _config_qualities(
    spec: ScenarioSpec,
    config: Configuration,
    uncertainty: UncertaintyState,
    params: SimulationParams,
    use_observed: bool = False,
) -> tuple[dict[str, float] | None, dict[str, float]]:
    """(raw values or None, utilities) for one configuration."""
    mode = spec.estimation.mode
    if mode == "pinned":
        pinned = spec.estimation.utilities or {}
        if config.id not in pinned:
            raise ValidationError(
                f"no pinned utilities for configuration {config.id!r}",
                f"/estimation/utilities/{config.id}",
            )
        values = (spec.estimation.qualities or {}).get(config.id)
        return (dict(values) if values else None), dict(pinned[config.id])
    if mode == "table":
        noise = uncertainty.levels.get("noise")
        jamming = uncertainty.levels.get("jamming")
        if noise is None or jamming is None:
            raise ValidationError(
                "table estimation needs noise and jamming levels", "/uncertainty/levels"
            )
        values = lookup_table_qualities(spec.table_data, config.id, noise, jamming)
    elif use_observed and config.observed_qualities:
        values = dict(config.observed_qualities)
    else:
        option_params = replace(params, seed=derive_seed(params.seed, config.id))
        result = monte_carlo_estimate(spec.workflow, config, uncertainty, option_params)
        values = {
            "failureRate": result.failure_rate_percent,
            "resourceUsage": result.mean_resource_usage,
        }
    utilities = {
        goal.quality_attribute: eval_utility_curve(goal.curve, values[goal.quality_attribute])
        for goal in spec.goals
    }
    return values, utilities


def _risk_inputs(
    spec: ScenarioSpec, config: Configuration, uncertainty: UncertaintyState
) -> dict[str, tuple[int, int]]:
    """Caller-supplied (likelihood, consequence) pairs for table-rated attributes."""
    supplied: dict[str, tuple[int, int]] = {}
    for attr in spec.risk_model.attributes:
        if attr.source == "table":
            jamming = uncertainty.levels.get("jamming")
            if jamming is None:
                raise ValidationError(
                    "table-rated risk needs a jamming level", "/uncertainty/levels"
                )
            supplied[attr.id] = interruption_rating(spec.table_data, config.id, jamming)
    return supplied


def _option_cost(
    spec: ScenarioSpec, current: Configuration, option: Configuration
) -> CostEstimate:
    if spec.estimation.mode == "table":
        return adaptation_cost(spec.table_data, current.id, option.id)
    return estimate_cost(current, option, spec.cost_model)


def current_utilities(
    spec: ScenarioSpec,
    uncertainty: UncertaintyState | None = None,
    params: SimulationParams | None = None,
) -> dict[str, float]:
    """Utilities of the current configuration under the given uncertainty."""
    uncertainty = uncertainty if uncertainty is not None else spec.uncertainty
    params = params or SimulationParams()
    _, utilities = _config_qualities(
        spec, spec.initial_configuration, uncertainty, params, use_observed=True
    )
    return utilities


def analyze(
    spec: ScenarioSpec,
    uncertainty: UncertaintyState | None = None,
    params: SimulationParams | None = None,
) -> AnalysisResult:
    """Estimate benefit, cost, desirability, and risk for every option."""
    uncertainty = uncertainty if uncertainty is not None else spec.uncertainty
    params = params or SimulationParams()
    current = spec.initial_configuration
    _, utilities_current = _config_qualities(
        spec, current, uncertainty, params, use_observed=True
    )

    current_risk: RiskEstimate | None = None
    if spec.decision.include_current_as_baseline:
        current_risk = estimate_risk(
            current, spec.risk_model, _risk_inputs(spec, current, uncertainty)
        )

    assessments: list[OptionAssessment] = []
    vetoed: list[str] = []
    for option in enumerate_adaptation_space(spec):
        values, utilities = _config_qualities(spec, option, uncertainty, params)
        benefit_value = estimated_benefit(utilities, utilities_current, spec.goals)
        benefit = BenefitEstimate(
            option_id=option.id,
            per_attribute_value=dict(values) if values else {},
            per_attribute_utility=utilities,
            estimated_benefit=benefit_value,
        )
        cost = _option_cost(spec, current, option)
        if cost.estimated_cost == 0 and option.same_settings(current):
            # Keeping the current configuration costs nothing and changes
            # nothing; its desirability is neutral rather than 0/0.
            desire = DesirabilityEstimate(option.id, spec.desirability.method, 0.0)
        else:
            desire = desirability(
                benefit_value,
                cost.estimated_cost,
                spec.desirability.benefit_scaling,
                spec.desirability.cost_scaling,
                spec.desirability.method,
                option_id=option.id,
            )
        risk = estimate_risk(option, spec.risk_model, _risk_inputs(spec, option, uncertainty))
        assessment = OptionAssessment(option, values, utilities, benefit, cost, desire, risk)
        if risk.vetoed:
            vetoed.append(option.id)
        else:
            assessments.append(assessment)

    return AnalysisResult(
        current_id=current.id,
        current_utilities=utilities_current,
        current_risk=current_risk,
        assessments=tuple(assessments),
        vetoed=tuple(vetoed),
    )


def decide(
    spec: ScenarioSpec,
    uncertainty: UncertaintyState | None = None,
    params: SimulationParams | None = None,
) -> tuple[Decision, AnalysisResult]:
    """Run the full pipeline and select the best adaptation option."""
    analysis = analyze(spec, uncertainty, params)
    if not analysis.assessments:
        raise NoViableOption("every option was vetoed")
    triples = [
        (a.option, a.desirability.estimated_desirability, a.risk.estimated_risk)
        for a in analysis.assessments
    ]
    current_risk = analysis.current_risk.estimated_risk if analysis.current_risk else 0.0
    decision = select(
        spec.initial_configuration, triples, spec.decision, current_risk=current_risk
    )
    return decision, analysis
