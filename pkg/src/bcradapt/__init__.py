"""Benefit-cost-risk aware decision engine for self-adaptive service systems.

The package estimates per-option benefit, cost, and risk, ranks adaptation
options by a weighted benefit-cost-risk score, runs design-time tradeoff
sweeps, and closes the loop over a simulated probabilistic service workflow.
"""

from .benefit import (
    AdaptationGoal,
    BenefitEstimate,
    UtilityResponseCurve,
    estimate_option_qualities,
    estimated_benefit,
    eval_utility_curve,
)
from .cost import (
    CostAttribute,
    CostEstimate,
    CostModel,
    CostType,
    default_cost_attribute_registry,
    estimate_cost,
    register_cost_attribute,
)
from .decision import Decision, DecisionPolicy, ScoreBreakdown, ebcr_score, select
from .desirability import (
    DesirabilityEstimate,
    DesirabilityMethod,
    DesirabilityPolicy,
    ScalingFunction,
    ScalingKind,
    apply_scaling,
    desirability,
    display_value,
)
from .domain import (
    AdaptationSpaceSpec,
    Configuration,
    ConcreteService,
    DataPolicy,
    EstimationSpec,
    ScenarioSpec,
    ServiceProvider,
    SlaTier,
    UncertaintyState,
    diff_configurations,
    enumerate_adaptation_space,
)
from .engine import AnalysisResult, OptionAssessment, analyze, decide
from .iot_tables import (
    IoTSettings,
    TableScenarioData,
    adaptation_cost,
    interruption_rating,
    lookup_table_qualities,
)
from .mape import CycleRecord, EpisodeConfig, EpisodeLog, run_episode
from .risk import (
    AttributeRisk,
    RiskAttribute,
    RiskEstimate,
    RiskMatrix,
    RiskMetricTable,
    RiskModel,
    RiskRating,
    combine_consequence,
    combine_likelihood,
    estimate_risk,
    matrix_lookup,
    rate_service,
    risk_veto,
)
from .scenario_io import (
    builtin_scenario_path,
    load_scenario,
    save_report,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
)
from .simulator import (
    BranchEdge,
    BranchPoint,
    InvokeStep,
    SimulationParams,
    SimulationResult,
    WorkflowModel,
    derive_seed,
    enumerate_exact,
    enumerate_paths,
    monte_carlo_estimate,
    simulate_run,
)
from .tradeoff import CrossoverReport, SweepKind, SweepSpec, emit_sweep_csv, sweep

__version__ = "0.1.0"
