"""Test-only builders: random DAG workflows for estimator soundness checks."""

import math

import numpy as np

from bcradapt import (
    BranchEdge,
    BranchPoint,
    Configuration,
    ConcreteService,
    DataPolicy,
    InvokeStep,
    ServiceProvider,
    SlaTier,
    WorkflowModel,
)

_PROVIDER = ServiceProvider("TP", SlaTier.UNLABELED, DataPolicy.UNSPECIFIED)


def random_dag_workflow(rng: np.random.Generator, max_branches: int = 8):
    """A random layered DAG: a spine of branch points whose edges run through
    short invoke chains. Returns (workflow, configuration bound to it)."""
    n_branches = int(rng.integers(1, max_branches + 1))
    nodes = []
    services = {}
    counter = 0

    def new_invoke_chain(length, final_target):
        """Append `length` invoke nodes ending at final_target; return entry id."""
        nonlocal counter
        target = final_target
        entry = final_target
        for _ in range(length):
            counter += 1
            role = f"role{counter}"
            service = ConcreteService(
                id=f"svc{counter}",
                abstract_role=role,
                provider=_PROVIDER,
                failure_probability=float(rng.uniform(0.0, 0.15)),
                resource_usage=float(rng.uniform(0.0, 10.0)),
            )
            services[role] = service
            node_id = f"invoke{counter}"
            nodes.append(InvokeStep(id=node_id, role=role, to=target))
            target = node_id
            entry = node_id
        return entry

    spine_ids = [f"branch{i}" for i in range(n_branches)]
    for i, branch_id in enumerate(spine_ids):
        next_spine = spine_ids[i + 1] if i + 1 < n_branches else None
        n_edges = int(rng.integers(2, 4))
        raw = rng.uniform(0.05, 1.0, n_edges)
        probs = list(raw / raw.sum())
        probs[-1] = 1.0 - math.fsum(probs[:-1])
        edges = []
        for j in range(n_edges):
            chain_len = int(rng.integers(0, 3))
            target = new_invoke_chain(chain_len, next_spine)
            edges.append(BranchEdge(id=f"{branch_id}-e{j}", probability=probs[j], to=target))
        nodes.append(BranchPoint(id=branch_id, edges=tuple(edges)))

    entry = new_invoke_chain(int(rng.integers(0, 3)), spine_ids[0])
    workflow = WorkflowModel(entry=entry, nodes=tuple(nodes))
    bindings = {role: svc for role, svc in services.items()}
    # A workflow may have no invokes at all; keep at least one role bound.
    if not bindings:
        svc = ConcreteService("svc0", "role0", _PROVIDER, 0.0, 0.0)
        bindings = {"role0": svc}
    config = Configuration(id="test-option", bindings=bindings)
    return workflow, config
