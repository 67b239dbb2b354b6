#!/usr/bin/env python3
"""Fit the default e-health scenario's service parameters to its quality anchors.

The workflow shape and branch probabilities are fixed design choices; the
per-service failure probabilities and resource usages of the drug services are
solved so that exact path enumeration reproduces the target (failure rate %,
resource usage) anchors for three reference configurations:

    current  {SP1 analysis, SP3 drug, SP1 alarm} -> (1.5, 15.0)
    config A {SP1 analysis, SP2 drug, SP2 alarm} -> (0.5, 18.0)
    config B {SP1 analysis, SP1 drug, SP1 alarm} -> (1.3,  3.0)

The remaining services get hand-picked values (they only shape the rest of the
adaptation space). Run this script to print the solved service table and an
enumerate_exact verification of every anchor; the solved values are embedded
in src/bcradapt/scenarios/ehealth.json.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bcradapt.domain import (
    Configuration,
    ConcreteService,
    DataPolicy,
    ServiceProvider,
    SlaTier,
    UncertaintyState,
)
from bcradapt.simulator import BranchEdge, BranchPoint, InvokeStep, WorkflowModel, enumerate_exact

# Fixed workflow branch probabilities.
P_PANIC = 0.05  # direct alarm via panic button
P_NO_ACTION = 0.55  # analysis finds nothing to do
P_DRUG = 0.30  # analysis dispatches the drug service
P_ALARM = 0.15  # analysis dispatches the alarm service

# Invocation probabilities implied by the workflow shape.
P_ANALYSIS = 1.0 - P_PANIC
P_DRUG_TOTAL = P_ANALYSIS * P_DRUG
P_ALARM_TOTAL = P_PANIC + P_ANALYSIS * P_ALARM

# Hand-picked free parameters (failure probability, resource usage).
FIXED = {
    "SP1-MAS": (0.004, 2.0),
    "SP1-AS": (0.020, 1.0),
    "SP2-AS": (0.002, 10.0),
    # Unconstrained by the anchors; chosen to keep the rest of the space varied.
    "SP2-MAS": (0.001, 6.0),
    "SP3-MAS": (0.030, 4.0),
    "SP3-AS": (0.050, 3.0),
}

# (failure %, resource) anchors per reference configuration.
ANCHORS = {
    "current": (("SP1-MAS", "SP3-DS", "SP1-AS"), (1.5, 15.0)),
    "optionA": (("SP1-MAS", "SP2-DS", "SP2-AS"), (0.5, 18.0)),
    "optionB": (("SP1-MAS", "SP1-DS", "SP1-AS"), (1.3, 3.0)),
}


def expected_failure(f_mas: float, f_drug: float, f_alarm: float) -> float:
    """Exact failure probability of one request for the fixed workflow shape."""
    ok_mas = 1.0 - f_mas
    return (
        P_PANIC * f_alarm
        + P_ANALYSIS * P_NO_ACTION * f_mas
        + P_ANALYSIS * P_DRUG * (1.0 - ok_mas * (1.0 - f_drug))
        + P_ANALYSIS * P_ALARM * (1.0 - ok_mas * (1.0 - f_alarm))
    )


def solve_drug_service(anchor_key: str, alarm_id: str) -> tuple[float, float]:
    """Solve (failure, resource) of the drug service hit by one anchor."""
    (mas_id, _drug_id, _alarm_id), (fail_pct, resource) = ANCHORS[anchor_key]
    f_mas, r_mas = FIXED[mas_id]
    f_alarm, r_alarm = FIXED[alarm_id]
    # Resource usage is linear in invocation probabilities.
    r_drug = (resource - P_ANALYSIS * r_mas - P_ALARM_TOTAL * r_alarm) / P_DRUG_TOTAL
    # Failure: isolate the drug term of expected_failure.
    base = expected_failure(f_mas, 0.0, f_alarm)
    f_drug = (fail_pct / 100.0 - base) / (P_DRUG_TOTAL * (1.0 - f_mas))
    return f_drug, r_drug


def build_workflow() -> WorkflowModel:
    return WorkflowModel(
        entry="triage",
        nodes=(
            BranchPoint(
                "triage",
                (
                    BranchEdge("panic", P_PANIC, "alarm-direct"),
                    BranchEdge("monitor", P_ANALYSIS, "analysis"),
                ),
            ),
            InvokeStep("alarm-direct", "Alarm", None),
            InvokeStep("analysis", "MedicalAnalysis", "outcome"),
            BranchPoint(
                "outcome",
                (
                    BranchEdge("no-action", P_NO_ACTION, None),
                    BranchEdge("dispatch-drug", P_DRUG, "drug"),
                    BranchEdge("dispatch-alarm", P_ALARM, "alarm"),
                ),
            ),
            InvokeStep("drug", "Drug", None),
            InvokeStep("alarm", "Alarm", None),
        ),
    )


def main() -> int:
    solved = dict(FIXED)
    solved["SP3-DS"] = solve_drug_service("current", "SP1-AS")
    solved["SP2-DS"] = solve_drug_service("optionA", "SP2-AS")
    solved["SP1-DS"] = solve_drug_service("optionB", "SP1-AS")

    providers = {
        "SP1": ServiceProvider("SP1", SlaTier.SILVER, DataPolicy.STORED_WITH_PARTNERS),
        "SP2": ServiceProvider("SP2", SlaTier.GOLD, DataPolicy.STORED_LOCAL),
        "SP3": ServiceProvider("SP3", SlaTier.BRONZE, DataPolicy.SHARED_WITH_PARTNERS),
    }
    role_of = {"MAS": "MedicalAnalysis", "DS": "Drug", "AS": "Alarm"}
    services = {
        sid: ConcreteService(
            id=sid,
            abstract_role=role_of[sid.split("-")[1]],
            provider=providers[sid.split("-")[0]],
            failure_probability=fail,
            resource_usage=usage,
        )
        for sid, (fail, usage) in solved.items()
    }

    workflow = build_workflow()
    print("solved service table (failureProbability, resourceUsagePerInvocation):")
    for sid in sorted(services):
        svc = services[sid]
        print(f"  {sid}: ({svc.failure_probability!r}, {svc.resource_usage!r})")

    print("\nanchor verification via enumerate_exact:")
    worst = 0.0
    for key, (binding_ids, (fail_pct, resource)) in ANCHORS.items():
        config = Configuration(
            id=key,
            bindings={
                services[sid].abstract_role: services[sid] for sid in binding_ids
            },
        )
        got_fail, got_resource = enumerate_exact(workflow, config, UncertaintyState())
        err = max(abs(got_fail - fail_pct), abs(got_resource - resource))
        worst = max(worst, err)
        print(
            f"  {key}: failure {got_fail:.6f}% (target {fail_pct}), "
            f"resource {got_resource:.6f} (target {resource}), max err {err:.2e}"
        )

    print("\nservices JSON fragment:")
    import json

    fragment = [
        {
            "id": sid,
            "abstractRole": services[sid].abstract_role,
            "provider": sid.split("-")[0],
            "failureProbability": services[sid].failure_probability,
            "resourceUsagePerInvocation": services[sid].resource_usage,
        }
        for sid in sorted(services)
    ]
    print(json.dumps(fragment, indent=2))
    if worst > 0.05:
        print(f"\nFAIL: worst anchor error {worst} exceeds 0.05")
        return 1
    print(f"\nOK: all anchors within 0.05 (worst {worst:.2e})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
