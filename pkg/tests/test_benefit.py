import numpy as np
import pytest
from hypothesis import given, strategies as st

from bcradapt import (
    AdaptationGoal,
    Configuration,
    ConcreteService,
    DataPolicy,
    InvokeStep,
    ServiceProvider,
    SimulationParams,
    SlaTier,
    UncertaintyState,
    UtilityResponseCurve,
    WorkflowModel,
    estimate_option_qualities,
    estimated_benefit,
    eval_utility_curve,
)
from bcradapt.errors import MissingAttribute

FAILURE_CURVE = UtilityResponseCurve(
    "failureRate", ((0, 100), (1, 100), (2, 30), (2.0001, 0))
)
RESOURCE_CURVE = UtilityResponseCurve(
    "resourceUsage", ((0, 100), (5, 100), (10, 50), (20, 50), (30, 0))
)


@pytest.mark.parametrize(
    "curve, value, expected",
    [
        (FAILURE_CURVE, 1.5, 65.0),
        (FAILURE_CURVE, 0.5, 100.0),
        (FAILURE_CURVE, 2.5, 0.0),
        (RESOURCE_CURVE, 3.0, 100.0),
        (RESOURCE_CURVE, 15.0, 50.0),
        (RESOURCE_CURVE, 18.0, 50.0),
    ],
)
def test_curve_anchor_values(curve, value, expected):
    assert eval_utility_curve(curve, value) == expected


def test_curve_declared_points_are_exact():
    for curve in (FAILURE_CURVE, RESOURCE_CURVE):
        for value, utility in curve.points:
            assert eval_utility_curve(curve, value) == utility


def test_curve_clamps_outside_range():
    assert eval_utility_curve(FAILURE_CURVE, -10.0) == 100.0
    assert eval_utility_curve(FAILURE_CURVE, 99.0) == 0.0


def test_curve_validation():
    with pytest.raises(ValueError):
        UtilityResponseCurve("x", ((0, 100),))
    with pytest.raises(ValueError):
        UtilityResponseCurve("x", ((0, 100), (0, 50)))
    with pytest.raises(ValueError):
        UtilityResponseCurve("x", ((0, 100), (1, 120)))


@st.composite
def _curve_and_value(draw):
    n = draw(st.integers(2, 6))
    xs = sorted(draw(st.lists(st.floats(-50, 50), min_size=n, max_size=n, unique=True)))
    us = [draw(st.floats(0, 100)) for _ in range(n)]
    curve = UtilityResponseCurve("q", tuple(zip(xs, us)))
    value = draw(st.floats(-60, 60))
    return curve, value


@given(_curve_and_value())
def test_curve_output_within_utility_bounds(curve_and_value):
    curve, value = curve_and_value
    utilities = [u for _, u in curve.points]
    result = eval_utility_curve(curve, value)
    assert min(utilities) - 1e-9 <= result <= max(utilities) + 1e-9


def test_curve_non_increasing_segment_stays_monotone():
    values = np.linspace(1.0, 2.0, 50)
    outputs = [eval_utility_curve(FAILURE_CURVE, v) for v in values]
    assert all(b <= a for a, b in zip(outputs, outputs[1:]))


GOALS = (
    AdaptationGoal("failureRate", FAILURE_CURVE, 0.7),
    AdaptationGoal("resourceUsage", RESOURCE_CURVE, 0.3),
)


def test_estimated_benefit_worked_values():
    current = {"failureRate": 65.0, "resourceUsage": 50.0}
    assert estimated_benefit({"failureRate": 100.0, "resourceUsage": 50.0}, current, GOALS) == pytest.approx(24.5, abs=1e-12)
    assert estimated_benefit({"failureRate": 85.0, "resourceUsage": 100.0}, current, GOALS) == pytest.approx(29.0, abs=1e-12)


def test_estimated_benefit_zero_when_equal():
    utilities = {"failureRate": 42.0, "resourceUsage": 13.0}
    assert estimated_benefit(utilities, dict(utilities), GOALS) == 0.0


def test_estimated_benefit_missing_attribute():
    with pytest.raises(MissingAttribute):
        estimated_benefit({"failureRate": 10.0}, {"failureRate": 5.0, "resourceUsage": 1.0}, GOALS)


@given(
    st.floats(-100, 100),
    st.floats(-100, 100),
    st.floats(0.1, 10),
)
def test_estimated_benefit_is_linear_in_differences(d1, d2, scale):
    current = {"failureRate": 0.0, "resourceUsage": 0.0}
    base = estimated_benefit({"failureRate": d1, "resourceUsage": d2}, current, GOALS)
    scaled = estimated_benefit(
        {"failureRate": d1 * scale, "resourceUsage": d2 * scale}, current, GOALS
    )
    assert scaled == pytest.approx(base * scale, rel=1e-9, abs=1e-9)


@given(
    st.floats(0, 100), st.floats(0, 100), st.floats(0, 100), st.floats(0, 100),
    st.floats(0.01, 0.99),
)
def test_estimated_benefit_bounded_when_weights_sum_to_one(u1, u2, v1, v2, w):
    goals = (
        AdaptationGoal("a", FAILURE_CURVE, w),
        AdaptationGoal("b", FAILURE_CURVE, 1.0 - w),
    )
    result = estimated_benefit({"a": u1, "b": u2}, {"a": v1, "b": v2}, goals)
    assert -100.0 - 1e-9 <= result <= 100.0 + 1e-9


def _single_service_workflow(failure, resources):
    provider = ServiceProvider("P", SlaTier.GOLD, DataPolicy.STORED_LOCAL)
    nodes = []
    bindings = {}
    next_id = None
    for i, (fail, usage) in enumerate(reversed(list(zip(failure, resources)))):
        role = f"r{i}"
        bindings[role] = ConcreteService(f"s{i}", role, provider, fail, usage)
        nodes.append(InvokeStep(id=f"n{i}", role=role, to=next_id))
        next_id = f"n{i}"
    return WorkflowModel(entry=next_id, nodes=tuple(nodes)), Configuration("opt", bindings)


def test_estimate_option_qualities_within_ci_of_expectation():
    workflow, option = _single_service_workflow([0.1], [5.0])
    params = SimulationParams(runs=100_000, seed=42)
    qualities = estimate_option_qualities(option, workflow, UncertaintyState(), params)
    sigma = 100 * (0.1 * 0.9 / 100_000) ** 0.5
    assert abs(qualities["failureRate"] - 10.0) <= 3 * sigma


def test_estimate_option_qualities_zero_failure_is_exact():
    workflow, option = _single_service_workflow([0.0], [5.0])
    qualities = estimate_option_qualities(
        option, workflow, UncertaintyState(), SimulationParams(runs=2000, seed=1)
    )
    assert qualities["failureRate"] == 0.0


def test_estimate_option_qualities_deterministic_path_resources():
    workflow, option = _single_service_workflow([0.0, 0.0, 0.0], [5.0, 6.0, 2.0])
    qualities = estimate_option_qualities(
        option, workflow, UncertaintyState(), SimulationParams(runs=5000, seed=3)
    )
    assert qualities["resourceUsage"] == 13.0
