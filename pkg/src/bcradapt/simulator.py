"""Probabilistic service-workflow simulation for quality estimation.

A workflow is a DAG of invoke steps (each calling the service bound to an
abstract role) and branch points (probabilistic choices between outgoing
edges). One run walks entry to exit: every invoked service fails
independently with its drift-adjusted failure probability, any failure marks
the run failed, and resource usage accumulates over the invoked services.

Estimation is Monte Carlo with a normal-approximation confidence interval and
optional adaptive stopping, plus an exact path-enumeration oracle for small
DAGs. Randomness comes from numpy's PCG64; substreams are derived by hashing
a (seed, label) pair, so per-option estimates are deterministic regardless of
evaluation order and can run in parallel.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Iterable

import numpy as np

from .domain import Configuration, UncertaintyState
from .errors import (
    RunCapExceeded,
    TooManyPaths,
    UnboundRole,
    ValidationError,
)

_MAX_BRANCH_NODES = 20
_MAX_PATHS = 1_000_000
_MAX_WALK_STEPS = 100_000
_PROBABILITY_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BranchEdge:
    """One outgoing edge of a branch point; `to` is None for exit."""

    id: str
    probability: float
    to: str | None = None


@dataclass(frozen=True)
class InvokeStep:
    """Invoke the service bound to `role`, then continue to `to` (None = exit)."""

    id: str
    role: str
    to: str | None = None


@dataclass(frozen=True)
class BranchPoint:
    id: str
    edges: tuple[BranchEdge, ...]


@dataclass(frozen=True)
class WorkflowModel:
    entry: str
    nodes: tuple[InvokeStep | BranchPoint, ...]
    acyclic: bool = True

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("workflow node ids must be unique")
        if self.entry not in set(ids):
            raise ValueError(f"workflow entry {self.entry!r} is not a node")

    def node(self, node_id: str) -> InvokeStep | BranchPoint:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def branch_points(self) -> list[BranchPoint]:
        return [n for n in self.nodes if isinstance(n, BranchPoint)]


@dataclass(frozen=True)
class SimulationParams:
    """Run budget, seed, and confidence settings for one estimate.

    When `target_half_width` is set, batches of `runs` keep executing until
    every attribute's CI half-width is below the target or `run_cap` runs have
    been spent, in which case RunCapExceeded carries the partial result.
    """

    runs: int = 10_000
    seed: int = 0
    confidence: float = 0.95
    target_half_width: float | None = None
    run_cap: int = 10_000_000

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError("confidence must be in (0, 1)")


@dataclass(frozen=True)
class SimulationResult:
    failure_rate_percent: float
    mean_resource_usage: float
    half_widths: dict[str, float]
    runs_executed: int


def derive_seed(seed: int, label: str) -> int:
    """Stable 63-bit substream seed for (seed, label); used to give each
    option (and each feedback-loop cycle) its own deterministic stream."""
    digest = hashlib.sha256(f"{seed}|{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def _effective_failure(service, uncertainty: UncertaintyState) -> float:
    drift = uncertainty.reliability_drift.get(service.id, 0.0)
    return min(1.0, max(0.0, service.failure_probability + drift))


def _edge_probabilities(branch: BranchPoint, uncertainty: UncertaintyState) -> list[float]:
    probs = [
        uncertainty.branch_probabilities.get(edge.id, edge.probability)
        for edge in branch.edges
    ]
    if any(p < 0 or p > 1 for p in probs):
        raise ValidationError("edge probability outside [0, 1]", f"/workflow/{branch.id}")
    if abs(math.fsum(probs) - 1.0) > _PROBABILITY_SUM_TOLERANCE:
        raise ValidationError(
            f"edge probabilities of branch {branch.id!r} sum to {math.fsum(probs)!r}, not 1",
            f"/workflow/{branch.id}",
        )
    return probs


def _bound_service(option: Configuration, role: str):
    if role not in option.bindings:
        raise UnboundRole(f"option {option.id!r} does not bind role {role!r}")
    return option.bindings[role]


def _successors(node: InvokeStep | BranchPoint) -> Iterable[str]:
    if isinstance(node, InvokeStep):
        return [node.to] if node.to is not None else []
    return [e.to for e in node.edges if e.to is not None]


def topological_order(workflow: WorkflowModel) -> list[str]:
    """Nodes reachable from the entry in topological order; raises ValueError
    on a cycle."""
    nodes = {n.id: n for n in workflow.nodes}
    reachable: set[str] = set()
    stack = [workflow.entry]
    while stack:
        node_id = stack.pop()
        if node_id in reachable:
            continue
        reachable.add(node_id)
        stack.extend(nid for nid in _successors(nodes[node_id]) if nid not in reachable)

    indegree = {nid: 0 for nid in reachable}
    for nid in reachable:
        for succ in _successors(nodes[nid]):
            indegree[succ] += 1
    frontier = sorted(nid for nid, deg in indegree.items() if deg == 0)
    order: list[str] = []
    while frontier:
        nid = frontier.pop(0)
        order.append(nid)
        for succ in _successors(nodes[nid]):
            indegree[succ] -= 1
            if indegree[succ] == 0:
                frontier.append(succ)
        frontier.sort()
    if len(order) != len(reachable):
        raise ValueError("workflow graph contains a cycle")
    return order


def simulate_run(
    workflow: WorkflowModel,
    option: Configuration,
    uncertainty: UncertaintyState,
    rng: np.random.Generator,
) -> tuple[bool, float]:
    """Walk the workflow once for `option`: returns (failed, resource used)."""
    nodes = {n.id: n for n in workflow.nodes}
    node_id: str | None = workflow.entry
    failed = False
    resource = 0.0
    steps = 0
    while node_id is not None:
        steps += 1
        if steps > _MAX_WALK_STEPS:
            raise ValueError("workflow walk exceeded the step budget (cycle?)")
        node = nodes[node_id]
        if isinstance(node, InvokeStep):
            service = _bound_service(option, node.role)
            if rng.random() < _effective_failure(service, uncertainty):
                failed = True
            resource += service.resource_usage
            node_id = node.to
        else:
            probs = _edge_probabilities(node, uncertainty)
            draw = rng.random()
            cumulative = 0.0
            chosen = node.edges[-1]
            for edge, p in zip(node.edges, probs):
                cumulative += p
                if draw < cumulative:
                    chosen = edge
                    break
            node_id = chosen.to
    return failed, resource


def _simulate_batch(
    workflow: WorkflowModel,
    option: Configuration,
    uncertainty: UncertaintyState,
    rng: np.random.Generator,
    n: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised batch of n runs over an acyclic workflow.

    Nodes are processed in topological order with one uniform draw per node
    per run (drawn for every run so stream consumption is shape-stable);
    active masks propagate path membership down the DAG, which is equivalent
    in distribution to walking each run separately.
    """
    nodes = {node.id: node for node in workflow.nodes}
    order = topological_order(workflow)
    active = {nid: np.zeros(n, dtype=bool) for nid in order}
    active[workflow.entry][:] = True
    failed = np.zeros(n, dtype=bool)
    resource = np.zeros(n, dtype=np.float64)

    for nid in order:
        node = nodes[nid]
        mask = active[nid]
        if isinstance(node, InvokeStep):
            service = _bound_service(option, node.role)
            p_fail = _effective_failure(service, uncertainty)
            draws = rng.random(n)
            failed |= mask & (draws < p_fail)
            resource += mask * service.resource_usage
            if node.to is not None:
                active[node.to] |= mask
        else:
            probs = _edge_probabilities(node, uncertainty)
            cumulative = np.cumsum(probs)
            draws = rng.random(n)
            choice = np.minimum(
                np.searchsorted(cumulative, draws, side="right"), len(probs) - 1
            )
            for index, edge in enumerate(node.edges):
                if edge.to is not None:
                    active[edge.to] |= mask & (choice == index)
    return failed, resource


def monte_carlo_estimate(
    workflow: WorkflowModel,
    option: Configuration,
    uncertainty: UncertaintyState,
    params: SimulationParams,
) -> SimulationResult:
    """Monte Carlo estimate of failure rate (percent) and mean resource usage.

    Deterministic given (seed, params, inputs): the same call always returns
    a bit-identical result.
    """
    rng = np.random.default_rng(np.random.PCG64(params.seed))
    z = NormalDist().inv_cdf(0.5 + params.confidence / 2.0)

    executed = 0
    failures = 0
    batch_sums: list[float] = []
    batch_square_sums: list[float] = []

    while True:
        batch = min(params.runs, params.run_cap - executed)
        if workflow.acyclic:
            failed, resource = _simulate_batch(workflow, option, uncertainty, rng, batch)
            failures += int(np.count_nonzero(failed))
            batch_sums.append(float(resource.sum()))
            batch_square_sums.append(float(np.square(resource).sum()))
        else:
            fail_count = 0
            total = 0.0
            total_sq = 0.0
            for _ in range(batch):
                run_failed, used = simulate_run(workflow, option, uncertainty, rng)
                fail_count += run_failed
                total += used
                total_sq += used * used
            failures += fail_count
            batch_sums.append(total)
            batch_square_sums.append(total_sq)
        executed += batch

        p_hat = failures / executed
        mean = math.fsum(batch_sums) / executed
        if executed > 1:
            variance = max(
                0.0,
                (math.fsum(batch_square_sums) - executed * mean * mean) / (executed - 1),
            )
        else:
            variance = 0.0
        failure_hw = 100.0 * z * math.sqrt(p_hat * (1.0 - p_hat) / executed)
        resource_hw = z * math.sqrt(variance / executed)
        result = SimulationResult(
            failure_rate_percent=100.0 * p_hat,
            mean_resource_usage=mean,
            half_widths={"failureRate": failure_hw, "resourceUsage": resource_hw},
            runs_executed=executed,
        )
        if params.target_half_width is None:
            return result
        if max(failure_hw, resource_hw) <= params.target_half_width:
            return result
        if executed >= params.run_cap:
            raise RunCapExceeded(
                f"run cap {params.run_cap} reached before half-width "
                f"{params.target_half_width} (at {max(failure_hw, resource_hw):.6g})",
                partial=result,
            )


@dataclass(frozen=True)
class PathOutcome:
    """One root-to-exit path: its probability, failure probability given the
    path, and deterministic resource usage."""

    probability: float
    failure_probability: float
    resource: float


def enumerate_paths(
    workflow: WorkflowModel,
    option: Configuration,
    uncertainty: UncertaintyState,
) -> list[PathOutcome]:
    """All paths through an acyclic workflow with their outcome statistics."""
    if len(workflow.branch_points()) > _MAX_BRANCH_NODES:
        raise TooManyPaths(
            f"exact enumeration supports at most {_MAX_BRANCH_NODES} branch points"
        )
    topological_order(workflow)  # raises on cycles
    nodes = {n.id: n for n in workflow.nodes}
    outcomes: list[PathOutcome] = []

    def walk(node_id: str | None, probability: float, success: float, resource: float):
        if len(outcomes) > _MAX_PATHS:
            raise TooManyPaths(f"exact enumeration exceeded {_MAX_PATHS} paths")
        if node_id is None:
            outcomes.append(PathOutcome(probability, 1.0 - success, resource))
            return
        node = nodes[node_id]
        if isinstance(node, InvokeStep):
            service = _bound_service(option, node.role)
            p_fail = _effective_failure(service, uncertainty)
            walk(node.to, probability, success * (1.0 - p_fail), resource + service.resource_usage)
        else:
            probs = _edge_probabilities(node, uncertainty)
            for edge, p in zip(node.edges, probs):
                if p > 0.0:
                    walk(edge.to, probability * p, success, resource)

    walk(workflow.entry, 1.0, 1.0, 0.0)
    return outcomes


def enumerate_exact(
    workflow: WorkflowModel,
    option: Configuration,
    uncertainty: UncertaintyState,
) -> tuple[float, float]:
    """Exact (failure rate percent, expected resource usage) by enumerating
    every path; the verification oracle for the statistical estimator."""
    outcomes = enumerate_paths(workflow, option, uncertainty)
    failure = math.fsum(o.probability * o.failure_probability for o in outcomes)
    resource = math.fsum(o.probability * o.resource for o in outcomes)
    return 100.0 * failure, resource
