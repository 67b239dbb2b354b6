import itertools

import pytest

from bcradapt import (
    Configuration,
    CostAttribute,
    CostType,
    default_cost_attribute_registry,
    estimate_cost,
    register_cost_attribute,
)
from bcradapt.errors import DuplicateAttribute, MissingCostEntry


def test_cost_worked_examples(current_config, option_c1, option_c2, testing_cost_model):
    assert estimate_cost(current_config, option_c1, testing_cost_model).estimated_cost == 4.0
    assert estimate_cost(current_config, option_c2, testing_cost_model).estimated_cost == 6.0


def test_cost_of_identity_is_zero(current_config, testing_cost_model):
    estimate = estimate_cost(current_config, current_config, testing_cost_model)
    assert estimate.estimated_cost == 0.0
    assert estimate.per_change == ()


def test_cost_breakdown_rows(current_config, option_c1, testing_cost_model):
    estimate = estimate_cost(current_config, option_c1, testing_cost_model)
    assert dict(estimate.per_change) == {"Drug": 2.0, "Alarm": 2.0}


def test_missing_cost_entry(current_config, option_c1, testing_cost_model):
    entries = {k: v for k, v in testing_cost_model.entries.items() if k != ("SP2", "Drug")}
    model = type(testing_cost_model)(attribute=testing_cost_model.attribute, entries=entries)
    with pytest.raises(MissingCostEntry, match="SP2"):
        estimate_cost(current_config, option_c1, model)


def test_cost_is_additive_over_changes(services, current_config, option_c1, testing_cost_model):
    # Reverting the alarm change removes exactly that change's entry.
    partial = Configuration(
        id="partial",
        bindings={**option_c1.bindings, "Alarm": current_config.bindings["Alarm"]},
    )
    full = estimate_cost(current_config, option_c1, testing_cost_model).estimated_cost
    reduced = estimate_cost(current_config, partial, testing_cost_model).estimated_cost
    assert full - reduced == testing_cost_model.entries[("SP2", "Alarm")]


def test_cost_depends_only_on_new_provider(services, current_config, testing_cost_model):
    # Same incoming service from different outgoing services costs the same.
    for old_drug in ("SP3-DS", "SP2-DS"):
        start = Configuration(
            id="start",
            bindings={**current_config.bindings, "Drug": services[old_drug]},
        )
        target = Configuration(
            id="target",
            bindings={**current_config.bindings, "Drug": services["SP1-DS"]},
        )
        assert estimate_cost(start, target, testing_cost_model).estimated_cost == 6.0


def test_cost_invariant_under_role_permutation(services, testing_cost_model):
    roles = ["MedicalAnalysis", "Drug", "Alarm"]
    base = {"MedicalAnalysis": "SP1-MAS", "Drug": "SP3-DS", "Alarm": "SP1-AS"}
    goal = {"MedicalAnalysis": "SP2-MAS", "Drug": "SP2-DS", "Alarm": "SP2-AS"}
    costs = set()
    for order in itertools.permutations(roles):
        current = Configuration("a", {r: services[base[r]] for r in order})
        option = Configuration("b", {r: services[goal[r]] for r in order})
        costs.add(estimate_cost(current, option, testing_cost_model).estimated_cost)
    assert costs == {7.0}


def test_default_registry_has_eight_attributes():
    assert len(default_cost_attribute_registry()) == 8


def test_register_cost_attribute():
    registry = {}
    attribute = CostAttribute("energy-budget", CostType.RESOURCES, "Required energy")
    register_cost_attribute(registry, attribute)
    assert registry == {"energy-budget": attribute}


def test_register_duplicate_attribute():
    registry = default_cost_attribute_registry()
    with pytest.raises(DuplicateAttribute):
        register_cost_attribute(
            registry, CostAttribute("power", CostType.RESOURCES, "Required energy")
        )
