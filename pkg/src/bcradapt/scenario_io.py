"""Scenario file loading, validation, and report serialization.

Scenarios are JSON documents with top-level keys: schemaVersion, name, roles,
providers, services, workflow, goals, costModel, riskModel, decision,
estimation, initialConfiguration, adaptationSpace, uncertainty, and the
optional appendixBTables block for table-driven scenarios. Validation errors
carry a JSON-pointer-style path to the offending field.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

from .benefit import AdaptationGoal, UtilityResponseCurve
from .cost import CostAttribute, CostModel, CostType
from .decision import Decision, DecisionPolicy
from .desirability import DesirabilityMethod, DesirabilityPolicy, ScalingFunction, ScalingKind
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
)
from .errors import ParseError, SinkWriteError, ValidationError
from .iot_tables import IoTSettings, TableScenarioData
from .mape import EpisodeLog
from .risk import RiskAttribute, RiskMatrix, RiskMetricTable, RiskModel, RiskRating
from .simulator import BranchEdge, BranchPoint, InvokeStep, WorkflowModel, topological_order

_WEIGHT_TOLERANCE = 1e-9


def builtin_scenario_path(name: str) -> Path:
    """Filesystem path of a scenario bundled with the package."""
    return Path(resources.files("bcradapt") / "scenarios" / name)


def _require(doc: dict, key: str, path: str):
    if key not in doc:
        raise ValidationError(f"missing required key {key!r}", f"{path}/{key}")
    return doc[key]


def _number(value, path: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValidationError("expected a number", path)
    return float(value)


def _enum(cls, value, path: str):
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(m.value for m in cls)
        raise ValidationError(f"expected one of: {choices}; got {value!r}", path) from None


# ---------------------------------------------------------------------------
# loading


def _load_providers(doc) -> dict[str, ServiceProvider]:
    providers: dict[str, ServiceProvider] = {}
    for i, entry in enumerate(_require(doc, "providers", "")):
        path = f"/providers/{i}"
        pid = _require(entry, "id", path)
        if pid in providers:
            raise ValidationError(f"duplicate provider id {pid!r}", path)
        providers[pid] = ServiceProvider(
            id=pid,
            sla_tier=_enum(SlaTier, _require(entry, "slaTier", path), f"{path}/slaTier"),
            data_policy=_enum(
                DataPolicy, entry.get("dataPolicy", "Unspecified"), f"{path}/dataPolicy"
            ),
        )
    return providers


def _load_services(doc, providers, roles) -> dict[str, ConcreteService]:
    services: dict[str, ConcreteService] = {}
    for i, entry in enumerate(_require(doc, "services", "")):
        path = f"/services/{i}"
        sid = _require(entry, "id", path)
        if sid in services:
            raise ValidationError(f"duplicate service id {sid!r}", path)
        role = _require(entry, "abstractRole", path)
        if role not in roles:
            raise ValidationError(f"unknown role {role!r}", f"{path}/abstractRole")
        provider_id = _require(entry, "provider", path)
        if provider_id not in providers:
            raise ValidationError(f"unknown provider {provider_id!r}", f"{path}/provider")
        try:
            services[sid] = ConcreteService(
                id=sid,
                abstract_role=role,
                provider=providers[provider_id],
                failure_probability=_number(
                    _require(entry, "failureProbability", path), f"{path}/failureProbability"
                ),
                resource_usage=_number(
                    _require(entry, "resourceUsagePerInvocation", path),
                    f"{path}/resourceUsagePerInvocation",
                ),
            )
        except ValueError as exc:
            raise ValidationError(str(exc), path) from exc
    return services


def _load_workflow(doc, roles) -> WorkflowModel | None:
    raw = doc.get("workflow")
    if raw is None:
        return None
    nodes: list[InvokeStep | BranchPoint] = []
    node_ids = {n.get("id") for n in raw.get("nodes", [])}
    for i, entry in enumerate(_require(raw, "nodes", "/workflow")):
        path = f"/workflow/nodes/{i}"
        nid = _require(entry, "id", path)
        kind = _require(entry, "kind", path)
        if kind == "invoke":
            role = _require(entry, "role", path)
            if role not in roles:
                raise ValidationError(f"unknown role {role!r}", f"{path}/role")
            to = entry.get("to")
            if to is not None and to not in node_ids:
                raise ValidationError(f"unknown target node {to!r}", f"{path}/to")
            nodes.append(InvokeStep(id=nid, role=role, to=to))
        elif kind == "branch":
            edges = []
            for j, edge in enumerate(_require(entry, "edges", path)):
                epath = f"{path}/edges/{j}"
                to = edge.get("to")
                if to is not None and to not in node_ids:
                    raise ValidationError(f"unknown target node {to!r}", f"{epath}/to")
                edges.append(
                    BranchEdge(
                        id=_require(edge, "id", epath),
                        probability=_number(
                            _require(edge, "probability", epath), f"{epath}/probability"
                        ),
                        to=to,
                    )
                )
            nodes.append(BranchPoint(id=nid, edges=tuple(edges)))
        else:
            raise ValidationError(f"unknown node kind {kind!r}", f"{path}/kind")
    try:
        workflow = WorkflowModel(
            entry=_require(raw, "entry", "/workflow"),
            nodes=tuple(nodes),
            acyclic=bool(raw.get("acyclic", True)),
        )
        if workflow.acyclic:
            topological_order(workflow)
    except ValueError as exc:
        raise ValidationError(str(exc), "/workflow") from exc
    return workflow


def _load_goals(doc) -> tuple[AdaptationGoal, ...]:
    goals = []
    for i, entry in enumerate(_require(doc, "goals", "")):
        path = f"/goals/{i}"
        attr = _require(entry, "qualityAttributeId", path)
        try:
            curve = UtilityResponseCurve(
                quality_attribute=attr,
                points=tuple(
                    (float(v), float(u)) for v, u in _require(entry, "curve", path)
                ),
            )
            goals.append(
                AdaptationGoal(
                    quality_attribute=attr,
                    curve=curve,
                    weight=_number(_require(entry, "weight", path), f"{path}/weight"),
                    utility_floor=entry.get("utilityFloor"),
                )
            )
        except (ValueError, TypeError) as exc:
            raise ValidationError(str(exc), f"{path}/curve") from exc
    total = math.fsum(g.weight for g in goals)
    if abs(total - 1.0) > _WEIGHT_TOLERANCE:
        raise ValidationError(f"goal weights sum to {total!r}, expected 1", "/goals")
    return tuple(goals)


def _load_cost_model(doc, providers, roles, services) -> CostModel | None:
    raw = doc.get("costModel")
    if raw is None:
        return None
    attr_raw = _require(raw, "attribute", "/costModel")
    attribute = CostAttribute(
        id=_require(attr_raw, "id", "/costModel/attribute"),
        cost_type=_enum(
            CostType, _require(attr_raw, "costType", "/costModel/attribute"),
            "/costModel/attribute/costType",
        ),
        metric=attr_raw.get("metric", ""),
    )
    entries: dict[tuple[str, str], float] = {}
    for i, entry in enumerate(_require(raw, "entries", "/costModel")):
        path = f"/costModel/entries/{i}"
        provider = _require(entry, "provider", path)
        role = _require(entry, "role", path)
        if provider not in providers:
            raise ValidationError(f"unknown provider {provider!r}", f"{path}/provider")
        if role not in roles:
            raise ValidationError(f"unknown role {role!r}", f"{path}/role")
        cost = _number(_require(entry, "cost", path), f"{path}/cost")
        if cost < 0:
            raise ValidationError("cost must be non-negative", f"{path}/cost")
        entries[(provider, role)] = cost
    for service in services.values():
        key = (service.provider.id, service.abstract_role)
        if key not in entries:
            raise ValidationError(
                f"no cost entry for offered pair {key!r}", "/costModel/entries"
            )
    return CostModel(attribute=attribute, entries=entries)


def _load_risk_model(doc, providers) -> RiskModel:
    raw = _require(doc, "riskModel", "")
    attributes = []
    for i, entry in enumerate(_require(raw, "attributes", "/riskModel")):
        path = f"/riskModel/attributes/{i}"
        attr_id = _require(entry, "id", path)
        try:
            matrix = RiskMatrix(
                risk_attribute=attr_id,
                cells=tuple(tuple(int(c) for c in row) for row in _require(entry, "matrix", path)),
            )
        except (ValueError, TypeError) as exc:
            raise ValidationError(str(exc), f"{path}/matrix") from exc
        source = entry.get("source", "bindings")
        metric_table = None
        if entry.get("metricTable") is not None:
            rows = {}
            for key, row in entry["metricTable"].items():
                rpath = f"{path}/metricTable/{key}"
                try:
                    rows[key] = RiskRating(
                        likelihood=_number(_require(row, "likelihood", rpath), f"{rpath}/likelihood"),
                        consequence=int(_require(row, "consequence", rpath)),
                        likelihood_label=row.get("likelihoodLabel", ""),
                        consequence_label=row.get("consequenceLabel", ""),
                        data_policy=row.get("dataPolicy"),
                    )
                except ValueError as exc:
                    raise ValidationError(str(exc), rpath) from exc
                if rows[key].consequence > matrix.consequence_axis_size:
                    raise ValidationError(
                        f"consequence {rows[key].consequence} outside the matrix axis",
                        f"{rpath}/consequence",
                    )
            metric_table = RiskMetricTable(risk_attribute=attr_id, rows=rows)
        try:
            attributes.append(
                RiskAttribute(
                    id=attr_id,
                    weight=_number(_require(entry, "weight", path), f"{path}/weight"),
                    matrix=matrix,
                    source=source,
                    metric_table=metric_table,
                    external_levels=(
                        {k: int(v) for k, v in entry["levels"].items()}
                        if entry.get("levels") is not None
                        else None
                    ),
                    default_level=entry.get("defaultLevel"),
                )
            )
        except ValueError as exc:
            raise ValidationError(str(exc), path) from exc
    total = math.fsum(a.weight for a in attributes)
    if abs(total - 1.0) > _WEIGHT_TOLERANCE:
        raise ValidationError(
            f"risk attribute weights sum to {total!r}, expected 1", "/riskModel/attributes"
        )
    # Cross-check declared tier/data-policy pairings against the providers.
    for attr in attributes:
        if attr.metric_table is None:
            continue
        for provider in providers.values():
            row = attr.metric_table.rows.get(provider.sla_tier.value)
            if row is not None and row.data_policy is not None:
                if provider.data_policy.value != row.data_policy:
                    raise ValidationError(
                        f"provider {provider.id!r} pairs tier {provider.sla_tier.value!r} "
                        f"with policy {provider.data_policy.value!r}, "
                        f"but the {attr.id!r} metric table expects {row.data_policy!r}",
                        f"/providers/{provider.id}",
                    )
    return RiskModel(
        attributes=tuple(attributes),
        veto_threshold=raw.get("vetoThreshold"),
        veto_mode=raw.get("vetoMode", "overall"),
        likelihood_rounding=raw.get("likelihoodRounding", "half-up"),
    )


def _load_scaling(raw, path: str) -> ScalingFunction:
    if raw is None:
        return ScalingFunction()
    kind = _enum(ScalingKind, raw.get("kind", "Identity"), f"{path}/kind")
    try:
        return ScalingFunction(
            kind=kind,
            threshold=float(raw.get("threshold", 0.0)),
            multiplier=float(raw.get("multiplier", 1.0)),
        )
    except ValueError as exc:
        raise ValidationError(str(exc), path) from exc


def _load_decision(doc) -> tuple[DesirabilityPolicy, DecisionPolicy]:
    raw = _require(doc, "decision", "")
    desirability = DesirabilityPolicy(
        method=_enum(DesirabilityMethod, raw.get("method", "ValueForCost"), "/decision/method"),
        benefit_scaling=_load_scaling(raw.get("benefitScaling"), "/decision/benefitScaling"),
        cost_scaling=_load_scaling(raw.get("costScaling"), "/decision/costScaling"),
    )
    w_desirability = _number(_require(raw, "wDesirability", "/decision"), "/decision/wDesirability")
    w_risk = _number(_require(raw, "wRisk", "/decision"), "/decision/wRisk")
    for name, w in (("wDesirability", w_desirability), ("wRisk", w_risk)):
        if not 0.0 <= w <= 1.0:
            raise ValidationError("weight must be in [0, 1]", f"/decision/{name}")
    if abs(w_desirability + w_risk - 1.0) > _WEIGHT_TOLERANCE:
        raise ValidationError(
            f"wDesirability + wRisk = {w_desirability + w_risk!r}, expected 1", "/decision"
        )
    policy = DecisionPolicy(
        w_desirability=w_desirability,
        w_risk=w_risk,
        tie_break=raw.get("tieBreak", "lexicographic"),
        include_current_as_baseline=bool(raw.get("includeCurrentAsBaseline", False)),
    )
    return desirability, policy


def _load_configuration(raw, services, roles, path: str) -> Configuration:
    bindings = {}
    for role, service_id in _require(raw, "bindings", path).items():
        if role not in roles:
            raise ValidationError(f"unknown role {role!r}", f"{path}/bindings")
        if service_id not in services:
            raise ValidationError(f"unknown service {service_id!r}", f"{path}/bindings/{role}")
        service = services[service_id]
        if service.abstract_role != role:
            raise ValidationError(
                f"service {service_id!r} implements {service.abstract_role!r}, not {role!r}",
                f"{path}/bindings/{role}",
            )
        bindings[role] = service
    missing = set(roles) - set(bindings)
    if missing:
        raise ValidationError(f"missing bindings for roles {sorted(missing)}", f"{path}/bindings")
    observed = raw.get("observedQualities")
    return Configuration(
        id=_require(raw, "id", path),
        bindings=bindings,
        observed_qualities={k: float(v) for k, v in observed.items()} if observed else None,
        params={k: str(v) for k, v in raw.get("params", {}).items()},
    )


def _load_tables(doc) -> TableScenarioData | None:
    raw = doc.get("appendixBTables")
    if raw is None:
        return None
    path = "/appendixBTables"
    configurations = {
        cid: IoTSettings(
            power=_require(entry, "power", f"{path}/configurations/{cid}"),
            schedule=_require(entry, "schedule", f"{path}/configurations/{cid}"),
        )
        for cid, entry in _require(raw, "configurations", path).items()
    }
    costs = _require(raw, "adaptationCosts", path)
    data = TableScenarioData(
        configurations=configurations,
        energy={k: float(v) for k, v in _require(raw, "energy", path).items()},
        packet_loss_noise={
            k: {lvl: float(v) for lvl, v in row.items()}
            for k, row in _require(raw, "packetLossNoise", path).items()
        },
        packet_loss_jamming={
            k: {lvl: float(v) for lvl, v in row.items()}
            for k, row in _require(raw, "packetLossJamming", path).items()
        },
        power_change_cost={
            k: float(v) for k, v in _require(costs, "powerChange", f"{path}/adaptationCosts").items()
        },
        schedule_switch_cost={
            k: float(v)
            for k, v in _require(costs, "scheduleSwitch", f"{path}/adaptationCosts").items()
        },
        likelihood_by_jamming={
            k: int(v) for k, v in _require(raw, "likelihoodByJammingLevel", path).items()
        },
        consequence_loss_bounds=tuple(
            float(v) for v in _require(raw, "consequenceLossBounds", path)
        ),
    )
    data.validate()
    return data


def scenario_from_dict(doc: dict) -> ScenarioSpec:
    if not isinstance(doc, dict):
        raise ValidationError("scenario document must be a JSON object", "/")
    roles = tuple(_require(doc, "roles", ""))
    providers = _load_providers(doc)
    services = _load_services(doc, providers, roles)
    workflow = _load_workflow(doc, roles)
    goals = _load_goals(doc)
    cost_model = _load_cost_model(doc, providers, roles, services)
    risk_model = _load_risk_model(doc, providers)
    desirability, decision_policy = _load_decision(doc)
    tables = _load_tables(doc)

    estimation_raw = _require(doc, "estimation", "")
    mode = estimation_raw.get("mode", "simulation")
    if mode not in ("simulation", "pinned", "table"):
        raise ValidationError(f"unknown estimation mode {mode!r}", "/estimation/mode")
    estimation = EstimationSpec(
        mode=mode,
        utilities=(
            {cid: {a: float(v) for a, v in u.items()} for cid, u in estimation_raw["utilities"].items()}
            if estimation_raw.get("utilities") is not None
            else None
        ),
        qualities=(
            {cid: {a: float(v) for a, v in q.items()} for cid, q in estimation_raw["qualities"].items()}
            if estimation_raw.get("qualities") is not None
            else None
        ),
    )
    if mode == "simulation" and workflow is None:
        raise ValidationError("simulation estimation needs a workflow", "/workflow")
    if mode == "table" and tables is None:
        raise ValidationError("table estimation needs appendixBTables", "/appendixBTables")
    if mode == "pinned" and estimation.utilities is None:
        raise ValidationError("pinned estimation needs utilities", "/estimation/utilities")

    initial = _load_configuration(
        _require(doc, "initialConfiguration", ""), services, roles, "/initialConfiguration"
    )

    space_raw = _require(doc, "adaptationSpace", "")
    if space_raw.get("cartesian"):
        space = AdaptationSpaceSpec(cartesian=True)
    else:
        options = tuple(
            _load_configuration(entry, services, roles, f"/adaptationSpace/options/{i}")
            for i, entry in enumerate(space_raw.get("options", []))
        )
        if not options:
            raise ValidationError("adaptation space must not be empty", "/adaptationSpace")
        space = AdaptationSpaceSpec(cartesian=False, options=options)

    uncertainty_raw = doc.get("uncertainty", {})
    uncertainty = UncertaintyState(
        branch_probabilities={
            k: float(v) for k, v in uncertainty_raw.get("branchProbabilities", {}).items()
        },
        reliability_drift={
            k: float(v) for k, v in uncertainty_raw.get("reliabilityDrift", {}).items()
        },
        levels={k: str(v) for k, v in uncertainty_raw.get("levels", {}).items()},
    )
    for key, value in uncertainty.branch_probabilities.items():
        if not 0.0 <= value <= 1.0:
            raise ValidationError(
                f"branch probability {value!r} outside [0, 1]",
                f"/uncertainty/branchProbabilities/{key}",
            )

    spec = ScenarioSpec(
        name=doc.get("name", "scenario"),
        role_set=roles,
        providers=providers,
        services=services,
        workflow=workflow,
        goals=goals,
        cost_model=cost_model,
        risk_model=risk_model,
        desirability=desirability,
        decision=decision_policy,
        estimation=estimation,
        initial_configuration=initial,
        adaptation_space=space,
        uncertainty=uncertainty,
        table_data=tables,
        schema_version=int(doc.get("schemaVersion", 1)),
    )
    _validate_cross_references(spec)
    return spec


def _validate_cross_references(spec: ScenarioSpec) -> None:
    if spec.estimation.mode == "pinned":
        option_ids = [o.id for o in spec.adaptation_space.options]
        for cid in [spec.initial_configuration.id, *option_ids]:
            if cid not in (spec.estimation.utilities or {}):
                raise ValidationError(
                    f"pinned utilities missing configuration {cid!r}", "/estimation/utilities"
                )
            for goal in spec.goals:
                if goal.quality_attribute not in spec.estimation.utilities[cid]:
                    raise ValidationError(
                        f"pinned utilities for {cid!r} lack {goal.quality_attribute!r}",
                        f"/estimation/utilities/{cid}",
                    )
    if spec.estimation.mode == "table":
        for config in (spec.initial_configuration, *spec.adaptation_space.options):
            if config.id not in spec.table_data.configurations:
                raise ValidationError(
                    f"configuration {config.id!r} has no table rows",
                    "/appendixBTables/configurations",
                )
    if spec.workflow is not None:
        from .simulator import _edge_probabilities

        for branch in spec.workflow.branch_points():
            _edge_probabilities(branch, spec.uncertainty)


def load_scenario(path: str | Path) -> ScenarioSpec:
    """Parse and validate a scenario file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read scenario file: {exc}", str(path)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", f"/line/{exc.lineno}") from exc
    return scenario_from_dict(doc)


# ---------------------------------------------------------------------------
# saving


def _dump_configuration(config: Configuration) -> dict:
    out: dict = {"id": config.id, "bindings": config.binding_ids()}
    if config.observed_qualities is not None:
        out["observedQualities"] = config.observed_qualities
    if config.params:
        out["params"] = config.params
    return out


def scenario_to_dict(spec: ScenarioSpec) -> dict:
    doc: dict = {
        "schemaVersion": spec.schema_version,
        "name": spec.name,
        "roles": list(spec.role_set),
        "providers": [
            {"id": p.id, "slaTier": p.sla_tier.value, "dataPolicy": p.data_policy.value}
            for p in spec.providers.values()
        ],
        "services": [
            {
                "id": s.id,
                "abstractRole": s.abstract_role,
                "provider": s.provider.id,
                "failureProbability": s.failure_probability,
                "resourceUsagePerInvocation": s.resource_usage,
            }
            for s in spec.services.values()
        ],
        "goals": [
            {
                "qualityAttributeId": g.quality_attribute,
                "weight": g.weight,
                "curve": [[v, u] for v, u in g.curve.points],
                **({"utilityFloor": g.utility_floor} if g.utility_floor is not None else {}),
            }
            for g in spec.goals
        ],
        "riskModel": {
            "attributes": [
                {
                    "id": a.id,
                    "weight": a.weight,
                    "source": a.source,
                    "matrix": [list(row) for row in a.matrix.cells],
                    **(
                        {
                            "metricTable": {
                                key: {
                                    "likelihood": r.likelihood,
                                    "consequence": r.consequence,
                                    "likelihoodLabel": r.likelihood_label,
                                    "consequenceLabel": r.consequence_label,
                                    **(
                                        {"dataPolicy": r.data_policy}
                                        if r.data_policy is not None
                                        else {}
                                    ),
                                }
                                for key, r in a.metric_table.rows.items()
                            }
                        }
                        if a.metric_table is not None
                        else {}
                    ),
                    **({"levels": a.external_levels} if a.external_levels is not None else {}),
                    **({"defaultLevel": a.default_level} if a.default_level is not None else {}),
                }
                for a in spec.risk_model.attributes
            ],
            "vetoThreshold": spec.risk_model.veto_threshold,
            "vetoMode": spec.risk_model.veto_mode,
            "likelihoodRounding": spec.risk_model.likelihood_rounding,
        },
        "decision": {
            "method": spec.desirability.method.value,
            "benefitScaling": {
                "kind": spec.desirability.benefit_scaling.kind.value,
                "threshold": spec.desirability.benefit_scaling.threshold,
                "multiplier": spec.desirability.benefit_scaling.multiplier,
            },
            "costScaling": {
                "kind": spec.desirability.cost_scaling.kind.value,
                "threshold": spec.desirability.cost_scaling.threshold,
                "multiplier": spec.desirability.cost_scaling.multiplier,
            },
            "wDesirability": spec.decision.w_desirability,
            "wRisk": spec.decision.w_risk,
            "tieBreak": spec.decision.tie_break,
            "includeCurrentAsBaseline": spec.decision.include_current_as_baseline,
        },
        "estimation": {
            "mode": spec.estimation.mode,
            **({"utilities": spec.estimation.utilities} if spec.estimation.utilities else {}),
            **({"qualities": spec.estimation.qualities} if spec.estimation.qualities else {}),
        },
        "initialConfiguration": _dump_configuration(spec.initial_configuration),
        "adaptationSpace": (
            {"cartesian": True}
            if spec.adaptation_space.cartesian
            else {"options": [_dump_configuration(o) for o in spec.adaptation_space.options]}
        ),
        "uncertainty": {
            "branchProbabilities": spec.uncertainty.branch_probabilities,
            "reliabilityDrift": spec.uncertainty.reliability_drift,
            "levels": spec.uncertainty.levels,
        },
    }
    if spec.workflow is not None:
        nodes = []
        for node in spec.workflow.nodes:
            if isinstance(node, InvokeStep):
                nodes.append({"id": node.id, "kind": "invoke", "role": node.role, "to": node.to})
            else:
                nodes.append(
                    {
                        "id": node.id,
                        "kind": "branch",
                        "edges": [
                            {"id": e.id, "probability": e.probability, "to": e.to}
                            for e in node.edges
                        ],
                    }
                )
        doc["workflow"] = {
            "entry": spec.workflow.entry,
            "acyclic": spec.workflow.acyclic,
            "nodes": nodes,
        }
    if spec.cost_model is not None:
        doc["costModel"] = {
            "attribute": {
                "id": spec.cost_model.attribute.id,
                "costType": spec.cost_model.attribute.cost_type.value,
                "metric": spec.cost_model.attribute.metric,
            },
            "entries": [
                {"provider": provider, "role": role, "cost": cost}
                for (provider, role), cost in spec.cost_model.entries.items()
            ],
        }
    if spec.table_data is not None:
        t = spec.table_data
        doc["appendixBTables"] = {
            "configurations": {
                cid: {"power": s.power, "schedule": s.schedule}
                for cid, s in t.configurations.items()
            },
            "energy": t.energy,
            "packetLossNoise": t.packet_loss_noise,
            "packetLossJamming": t.packet_loss_jamming,
            "adaptationCosts": {
                "powerChange": t.power_change_cost,
                "scheduleSwitch": t.schedule_switch_cost,
            },
            "likelihoodByJammingLevel": t.likelihood_by_jamming,
            "consequenceLossBounds": list(t.consequence_loss_bounds),
        }
    return doc


def save_scenario(spec: ScenarioSpec, path: str | Path) -> None:
    try:
        Path(path).write_text(json.dumps(scenario_to_dict(spec), indent=2) + "\n")
    except OSError as exc:
        raise SinkWriteError(f"could not write scenario: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def decision_report_dict(decision: Decision) -> dict:
    return {
        "selected": decision.selected,
        "noAdaptation": decision.no_adaptation,
        "scores": {oid: round(s, 4) for oid, s in sorted(decision.scores.items())},
        "rationale": [
            {
                "option": oid,
                "desirability": round(b.desirability, 4),
                "risk": round(b.risk, 4),
                "score": round(b.score, 4),
            }
            for oid, b in sorted(decision.rationale.items())
        ],
    }


def save_report(report: Decision | EpisodeLog, path: str | Path, fmt: str | None = None) -> None:
    """Serialize a decision (json or csv, 4-decimal fixed) or an episode log
    (jsonl). The format defaults to the path suffix."""
    path = Path(path)
    if fmt is None:
        fmt = path.suffix.lstrip(".").lower() or "json"
    try:
        if isinstance(report, EpisodeLog):
            path.write_text(report.to_jsonl())
        elif fmt == "csv":
            lines = ["option,desirability,risk,score,selected"]
            for oid, b in sorted(report.rationale.items()):
                selected = "yes" if oid == report.selected else "no"
                lines.append(
                    f"{oid},{b.desirability:.4f},{b.risk:.4f},{b.score:.4f},{selected}"
                )
            path.write_text("\n".join(lines) + "\n")
        elif fmt == "json":
            path.write_text(json.dumps(decision_report_dict(report), indent=2) + "\n")
        else:
            raise ValueError(f"unknown report format {fmt!r}")
    except OSError as exc:
        raise SinkWriteError(f"could not write report: {exc}") from exc
