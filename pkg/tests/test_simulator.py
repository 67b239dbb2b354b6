import math

import numpy as np
import pytest

from bcradapt import (
    BranchEdge,
    BranchPoint,
    Configuration,
    ConcreteService,
    DataPolicy,
    InvokeStep,
    ServiceProvider,
    SimulationParams,
    SlaTier,
    UncertaintyState,
    WorkflowModel,
    enumerate_exact,
    enumerate_paths,
    monte_carlo_estimate,
    simulate_run,
)
from bcradapt.errors import RunCapExceeded, TooManyPaths, UnboundRole, ValidationError

from helpers import random_dag_workflow

PROVIDER = ServiceProvider("P", SlaTier.GOLD, DataPolicy.STORED_LOCAL)
NO_UNCERTAINTY = UncertaintyState()


def _service(sid, role, failure, usage):
    return ConcreteService(sid, role, PROVIDER, failure, usage)


def _single_step(failure, usage=5.0):
    workflow = WorkflowModel(entry="n0", nodes=(InvokeStep("n0", "r0", None),))
    option = Configuration("opt", {"r0": _service("s0", "r0", failure, usage)})
    return workflow, option


def _two_way_branch(p, svc_a, svc_b):
    workflow = WorkflowModel(
        entry="b0",
        nodes=(
            BranchPoint(
                "b0",
                (BranchEdge("e0", p, "na"), BranchEdge("e1", 1.0 - p, "nb")),
            ),
            InvokeStep("na", "ra", None),
            InvokeStep("nb", "rb", None),
        ),
    )
    option = Configuration("opt", {"ra": svc_a, "rb": svc_b})
    return workflow, option


def test_simulate_run_reliable_service():
    workflow, option = _single_step(0.0, 5.0)
    rng = np.random.default_rng(0)
    assert simulate_run(workflow, option, NO_UNCERTAINTY, rng) == (False, 5.0)


def test_simulate_run_always_failing_service():
    workflow, option = _single_step(1.0, 2.5)
    rng = np.random.default_rng(0)
    assert simulate_run(workflow, option, NO_UNCERTAINTY, rng) == (True, 2.5)


def test_branch_mean_resource_matches_exact_enumeration():
    workflow, option = _two_way_branch(
        0.5, _service("sa", "ra", 0.0, 2.0), _service("sb", "rb", 0.0, 4.0)
    )
    _, mean_resource = enumerate_exact(workflow, option, NO_UNCERTAINTY)
    assert mean_resource == pytest.approx(3.0, abs=1e-12)


def test_simulate_run_unbound_role():
    workflow, _ = _single_step(0.0)
    with pytest.raises(UnboundRole):
        simulate_run(workflow, Configuration("bare"), NO_UNCERTAINTY, np.random.default_rng(0))


def test_monte_carlo_zero_failure_is_exact():
    workflow, option = _single_step(0.0, 5.0)
    result = monte_carlo_estimate(workflow, option, NO_UNCERTAINTY, SimulationParams(runs=5000, seed=1))
    assert result.failure_rate_percent == 0.0
    assert result.half_widths["failureRate"] == 0.0
    assert result.mean_resource_usage == 5.0
    assert result.half_widths["resourceUsage"] == 0.0


def test_monte_carlo_close_to_expectation():
    workflow, option = _single_step(0.1)
    result = monte_carlo_estimate(
        workflow, option, NO_UNCERTAINTY, SimulationParams(runs=100_000, seed=42)
    )
    sigma = 100 * math.sqrt(0.1 * 0.9 / 100_000)
    assert abs(result.failure_rate_percent - 10.0) <= 3 * sigma


def test_monte_carlo_deterministic_path_resource_is_exact():
    provider_services = [(0.0, 5.0), (0.0, 6.0), (0.0, 2.0)]
    nodes = []
    bindings = {}
    next_id = None
    for i, (fail, usage) in enumerate(reversed(provider_services)):
        role = f"r{i}"
        bindings[role] = _service(f"s{i}", role, fail, usage)
        nodes.append(InvokeStep(f"n{i}", role, next_id))
        next_id = f"n{i}"
    workflow = WorkflowModel(entry=next_id, nodes=tuple(nodes))
    result = monte_carlo_estimate(
        workflow, Configuration("opt", bindings), NO_UNCERTAINTY, SimulationParams(runs=3000, seed=9)
    )
    assert result.mean_resource_usage == 13.0


def test_monte_carlo_replay_is_bit_identical():
    workflow, option = _two_way_branch(
        0.3, _service("sa", "ra", 0.2, 2.0), _service("sb", "rb", 0.05, 4.0)
    )
    params = SimulationParams(runs=20_000, seed=2024)
    first = monte_carlo_estimate(workflow, option, NO_UNCERTAINTY, params)
    second = monte_carlo_estimate(workflow, option, NO_UNCERTAINTY, params)
    assert first == second


def test_enumerate_exact_two_way_failure():
    workflow, option = _two_way_branch(
        0.5, _service("sa", "ra", 0.1, 0.0), _service("sb", "rb", 0.0, 0.0)
    )
    failure, _ = enumerate_exact(workflow, option, NO_UNCERTAINTY)
    assert failure == pytest.approx(5.0, abs=1e-12)


def test_degenerate_branches_match_single_run():
    workflow, option = _two_way_branch(
        1.0, _service("sa", "ra", 0.0, 7.0), _service("sb", "rb", 1.0, 1.0)
    )
    failure, resource = enumerate_exact(workflow, option, NO_UNCERTAINTY)
    run_failed, run_resource = simulate_run(
        workflow, option, NO_UNCERTAINTY, np.random.default_rng(5)
    )
    assert (failure, resource) == (0.0, 7.0)
    assert (run_failed, run_resource) == (False, 7.0)


def test_path_probabilities_sum_to_one():
    rng = np.random.default_rng(11)
    for _ in range(20):
        workflow, option = random_dag_workflow(rng)
        outcomes = enumerate_paths(workflow, option, NO_UNCERTAINTY)
        assert math.fsum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-9)


def test_resource_bounded_by_total_service_usage():
    rng = np.random.default_rng(13)
    for _ in range(10):
        workflow, option = random_dag_workflow(rng)
        _, mean_resource = enumerate_exact(workflow, option, NO_UNCERTAINTY)
        total = sum(s.resource_usage for s in option.bindings.values())
        assert 0.0 <= mean_resource <= total + 1e-9


def test_monte_carlo_agrees_with_exact_over_seeds():
    workflow, option = _two_way_branch(
        0.4, _service("sa", "ra", 0.15, 3.0), _service("sb", "rb", 0.02, 8.0)
    )
    exact_failure, exact_resource = enumerate_exact(workflow, option, NO_UNCERTAINTY)
    hits = 0
    for seed in range(100):
        result = monte_carlo_estimate(
            workflow, option, NO_UNCERTAINTY, SimulationParams(runs=20_000, seed=seed)
        )
        ok_failure = abs(result.failure_rate_percent - exact_failure) <= 3 * max(
            result.half_widths["failureRate"], 1e-12
        )
        ok_resource = abs(result.mean_resource_usage - exact_resource) <= 3 * max(
            result.half_widths["resourceUsage"], 1e-12
        )
        hits += ok_failure and ok_resource
    assert hits >= 99


def test_adaptive_stopping_reaches_target():
    workflow, option = _single_step(0.2)
    params = SimulationParams(runs=5000, seed=3, target_half_width=0.5)
    result = monte_carlo_estimate(workflow, option, NO_UNCERTAINTY, params)
    assert result.half_widths["failureRate"] <= 0.5
    assert result.runs_executed % 5000 == 0


def test_run_cap_exceeded_carries_partial_result():
    workflow, option = _single_step(0.2)
    params = SimulationParams(runs=1000, seed=3, target_half_width=1e-6, run_cap=3000)
    with pytest.raises(RunCapExceeded) as excinfo:
        monte_carlo_estimate(workflow, option, NO_UNCERTAINTY, params)
    partial = excinfo.value.partial
    assert partial.runs_executed == 3000
    assert 0.0 <= partial.failure_rate_percent <= 100.0


def test_too_many_branch_points():
    nodes = []
    for i in range(21):
        target = f"b{i + 1}" if i < 20 else None
        nodes.append(
            BranchPoint(
                f"b{i}",
                (BranchEdge(f"e{i}a", 0.5, target), BranchEdge(f"e{i}b", 0.5, target)),
            )
        )
    workflow = WorkflowModel(entry="b0", nodes=tuple(nodes))
    with pytest.raises(TooManyPaths):
        enumerate_paths(workflow, Configuration("opt"), NO_UNCERTAINTY)


def test_reliability_drift_is_applied_and_clamped():
    workflow, option = _single_step(0.1)
    drifted = UncertaintyState(reliability_drift={"s0": 5.0})
    failure, _ = enumerate_exact(workflow, option, drifted)
    assert failure == 100.0
    recovered = UncertaintyState(reliability_drift={"s0": -5.0})
    failure, _ = enumerate_exact(workflow, option, recovered)
    assert failure == 0.0


def test_branch_probability_overrides():
    workflow, option = _two_way_branch(
        0.5, _service("sa", "ra", 1.0, 1.0), _service("sb", "rb", 0.0, 2.0)
    )
    forced = UncertaintyState(branch_probabilities={"e0": 0.0, "e1": 1.0})
    failure, resource = enumerate_exact(workflow, option, forced)
    assert (failure, resource) == (0.0, 2.0)


def test_invalid_branch_probability_sum_is_rejected():
    workflow, option = _two_way_branch(
        0.5, _service("sa", "ra", 0.0, 1.0), _service("sb", "rb", 0.0, 2.0)
    )
    broken = UncertaintyState(branch_probabilities={"e0": 0.9})
    with pytest.raises(ValidationError):
        enumerate_exact(workflow, option, broken)


def test_monte_carlo_matches_exact_on_random_dags():
    rng = np.random.default_rng(2024)
    for _ in range(10):
        workflow, option = random_dag_workflow(rng, max_branches=4)
        exact_failure, exact_resource = enumerate_exact(workflow, option, NO_UNCERTAINTY)
        result = monte_carlo_estimate(
            workflow, option, NO_UNCERTAINTY, SimulationParams(runs=30_000, seed=77)
        )
        assert abs(result.failure_rate_percent - exact_failure) <= 4 * max(
            result.half_widths["failureRate"], 0.05
        )
        assert abs(result.mean_resource_usage - exact_resource) <= 4 * max(
            result.half_widths["resourceUsage"], 0.05
        )
