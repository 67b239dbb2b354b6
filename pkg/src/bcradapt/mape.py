"""Closed feedback loop over the simulated managed system.

Each cycle monitors (advances the uncertainty state and refreshes the current
configuration's observed qualities), analyzes every adaptation option,
plans (desirability plus selection), and executes the chosen rebinding while
accruing its one-off cost. Runs are fully deterministic for a given seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .decision import Decision
from .domain import ScenarioSpec, UncertaintyState
from .engine import AnalysisResult, OptionAssessment, _config_qualities, decide
from .errors import NoViableOption
from .simulator import SimulationParams, derive_seed


@dataclass(frozen=True)
class EpisodeConfig:
    """How many cycles to run and how uncertainty evolves between them.

    Either a scripted per-cycle trace of uncertainty states or a random-walk
    drift on branch probabilities (step sigma, clamped to [0, 1], siblings
    renormalised). The adaptation trigger fires every cycle by default, or
    only when a goal's utility floor is violated.
    """

    cycles: int
    trace: tuple[UncertaintyState, ...] | None = None
    drift_sigma: float = 0.0
    trigger: str = "every-cycle"  # "every-cycle" | "on-goal-violation"

    def __post_init__(self):
        if self.cycles < 1:
            raise ValueError("episode needs at least one cycle")
        if self.drift_sigma < 0:
            raise ValueError("drift sigma must be non-negative")
        if self.trace is not None and len(self.trace) < self.cycles:
            raise ValueError("scripted trace must cover every cycle")


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    uncertainty: UncertaintyState
    evaluated_options: int
    selected: str
    adapted: bool
    benefit: float | None
    cost: float | None
    desirability: float | None
    risk: float | None
    score: float | None
    scores: dict[str, float]
    cumulative_cost: float


@dataclass(frozen=True)
class EpisodeLog:
    records: tuple[CycleRecord, ...] = field(default_factory=tuple)

    def to_jsonl(self) -> str:
        lines = []
        for r in self.records:
            lines.append(
                json.dumps(
                    {
                        "cycle": r.cycle,
                        "uncertainty": {
                            "branchProbabilities": r.uncertainty.branch_probabilities,
                            "reliabilityDrift": r.uncertainty.reliability_drift,
                            "levels": r.uncertainty.levels,
                        },
                        "evaluatedOptions": r.evaluated_options,
                        "selected": r.selected,
                        "adapted": r.adapted,
                        "benefit": r.benefit,
                        "cost": r.cost,
                        "desirability": r.desirability,
                        "risk": r.risk,
                        "score": r.score,
                        "scores": r.scores,
                        "cumulativeCost": r.cumulative_cost,
                    },
                    sort_keys=True,
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")


def _drift_uncertainty(
    spec: ScenarioSpec,
    state: UncertaintyState,
    sigma: float,
    rng: np.random.Generator,
) -> UncertaintyState:
    """Random-walk the branch probabilities; other fields are carried over."""
    if spec.workflow is None or sigma == 0.0:
        return state
    overrides = dict(state.branch_probabilities)
    for branch in spec.workflow.branch_points():
        probs = [overrides.get(e.id, e.probability) for e in branch.edges]
        perturbed = [max(0.0, min(1.0, p + rng.normal(0.0, sigma))) for p in probs]
        total = math.fsum(perturbed)
        if total == 0.0:
            perturbed = [1.0 / len(probs)] * len(probs)
            total = 1.0
        for edge, p in zip(branch.edges, perturbed):
            overrides[edge.id] = p / total
    return UncertaintyState(
        branch_probabilities=overrides,
        reliability_drift=dict(state.reliability_drift),
        levels=dict(state.levels),
    )


def _goals_violated(spec: ScenarioSpec, utilities: dict[str, float]) -> bool:
    return any(
        goal.utility_floor is not None
        and utilities[goal.quality_attribute] < goal.utility_floor
        for goal in spec.goals
    )


def _selected_assessment(
    decision: Decision, analysis: AnalysisResult
) -> OptionAssessment | None:
    for assessment in analysis.assessments:
        if assessment.option.id == decision.selected:
            return assessment
    return None  # baseline "keep current" was selected


def run_episode(
    spec: ScenarioSpec,
    episode: EpisodeConfig,
    params: SimulationParams | None = None,
) -> EpisodeLog:
    """Run the feedback loop for `episode.cycles` cycles and log every step."""
    params = params or SimulationParams()
    drift_rng = np.random.default_rng(np.random.PCG64(derive_seed(params.seed, "drift")))
    current = spec.initial_configuration
    uncertainty = spec.uncertainty
    cumulative = 0.0
    records: list[CycleRecord] = []

    for cycle in range(episode.cycles):
        # Monitor: advance uncertainty, then refresh the current view of the system.
        if episode.trace is not None:
            uncertainty = episode.trace[cycle]
        else:
            uncertainty = _drift_uncertainty(spec, uncertainty, episode.drift_sigma, drift_rng)
        cycle_params = replace(params, seed=derive_seed(params.seed, f"cycle-{cycle}"))
        if spec.estimation.mode == "simulation":
            monitor_params = replace(
                cycle_params, seed=derive_seed(cycle_params.seed, "monitor")
            )
            observed, _ = _config_qualities(spec, current, uncertainty, monitor_params)
            current = replace(current, observed_qualities=observed)
        spec_now = replace(spec, initial_configuration=current, uncertainty=uncertainty)

        if episode.trigger == "on-goal-violation":
            _, utilities_now = _config_qualities(
                spec_now, current, uncertainty, cycle_params, use_observed=True
            )
            if not _goals_violated(spec_now, utilities_now):
                records.append(
                    CycleRecord(
                        cycle=cycle,
                        uncertainty=uncertainty,
                        evaluated_options=0,
                        selected=current.id,
                        adapted=False,
                        benefit=None,
                        cost=None,
                        desirability=None,
                        risk=None,
                        score=None,
                        scores={},
                        cumulative_cost=cumulative,
                    )
                )
                continue

        # Analyze + Plan.
        try:
            decision, analysis = decide(spec_now, uncertainty, cycle_params)
        except NoViableOption as exc:
            raise NoViableOption(f"cycle {cycle}: {exc}") from exc

        # Execute: rebind to the selected option and accrue its cost.
        chosen = _selected_assessment(decision, analysis)
        if chosen is None:
            adapted = False
            benefit = cost = desire = None
            risk = analysis.current_risk.estimated_risk if analysis.current_risk else None
        else:
            adapted = not chosen.option.same_settings(current)
            benefit = chosen.benefit.estimated_benefit
            cost = chosen.cost.estimated_cost
            desire = chosen.desirability.estimated_desirability
            risk = chosen.risk.estimated_risk
            if adapted:
                cumulative += cost
                current = replace(chosen.option, observed_qualities=None)

        records.append(
            CycleRecord(
                cycle=cycle,
                uncertainty=uncertainty,
                evaluated_options=len(analysis.assessments),
                selected=decision.selected,
                adapted=adapted,
                benefit=benefit,
                cost=cost,
                desirability=desire,
                risk=risk,
                score=decision.scores[decision.selected],
                scores=dict(decision.scores),
                cumulative_cost=cumulative,
            )
        )

    return EpisodeLog(records=tuple(records))
