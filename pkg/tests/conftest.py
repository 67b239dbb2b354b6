import pytest

from bcradapt import (
    Configuration,
    ConcreteService,
    CostAttribute,
    CostModel,
    CostType,
    DataPolicy,
    RiskAttribute,
    RiskMatrix,
    RiskMetricTable,
    RiskModel,
    RiskRating,
    ServiceProvider,
    SlaTier,
)

DEFAULT_MATRIX_CELLS = ((1, 1, 2, 3), (1, 2, 3, 4), (2, 3, 4, 5), (3, 4, 5, 5))


@pytest.fixture
def providers():
    return {
        "SP1": ServiceProvider("SP1", SlaTier.SILVER, DataPolicy.STORED_WITH_PARTNERS),
        "SP2": ServiceProvider("SP2", SlaTier.GOLD, DataPolicy.STORED_LOCAL),
        "SP3": ServiceProvider("SP3", SlaTier.BRONZE, DataPolicy.SHARED_WITH_PARTNERS),
    }


@pytest.fixture
def services(providers):
    role_of = {"MAS": "MedicalAnalysis", "DS": "Drug", "AS": "Alarm"}
    out = {}
    for pid in providers:
        for suffix, role in role_of.items():
            sid = f"{pid}-{suffix}"
            out[sid] = ConcreteService(
                id=sid,
                abstract_role=role,
                provider=providers[pid],
                failure_probability=0.01,
                resource_usage=1.0,
            )
    return out


def _config(services, config_id, mas, drug, alarm):
    return Configuration(
        id=config_id,
        bindings={
            "MedicalAnalysis": services[mas],
            "Drug": services[drug],
            "Alarm": services[alarm],
        },
    )


@pytest.fixture
def current_config(services):
    return _config(services, "Cc", "SP1-MAS", "SP3-DS", "SP1-AS")


@pytest.fixture
def option_c1(services):
    return _config(services, "C1", "SP1-MAS", "SP2-DS", "SP2-AS")


@pytest.fixture
def option_c2(services):
    return _config(services, "C2", "SP1-MAS", "SP1-DS", "SP1-AS")


@pytest.fixture
def testing_cost_model():
    entries = {
        ("SP1", "MedicalAnalysis"): 5.0,
        ("SP1", "Drug"): 6.0,
        ("SP1", "Alarm"): 2.0,
        ("SP2", "MedicalAnalysis"): 3.0,
        ("SP2", "Drug"): 2.0,
        ("SP2", "Alarm"): 2.0,
        ("SP3", "MedicalAnalysis"): 8.0,
        ("SP3", "Drug"): 8.0,
        ("SP3", "Alarm"): 4.0,
    }
    attribute = CostAttribute("service-testing", CostType.RESOURCES, "Required processing resources")
    return CostModel(attribute=attribute, entries=entries)


@pytest.fixture
def confidentiality_table():
    return RiskMetricTable(
        risk_attribute="data-confidentiality",
        rows={
            "Gold": RiskRating(1 / 3, 1, "rarely", "negligible effect"),
            "Silver": RiskRating(2 / 3, 2, "possibly", "limited impact"),
            "Bronze": RiskRating(3 / 3, 3, "likely", "sensitive data loss"),
            "Unlabeled": RiskRating(4 / 3, 4, "almost certain", "significant impact"),
        },
    )


@pytest.fixture
def default_matrix():
    return RiskMatrix(risk_attribute="data-confidentiality", cells=DEFAULT_MATRIX_CELLS)


@pytest.fixture
def ehealth_risk_model(confidentiality_table, default_matrix):
    health_matrix = RiskMatrix(risk_attribute="patient-health", cells=DEFAULT_MATRIX_CELLS)
    return RiskModel(
        attributes=(
            RiskAttribute(
                id="data-confidentiality",
                weight=0.2,
                matrix=default_matrix,
                source="bindings",
                metric_table=confidentiality_table,
            ),
            RiskAttribute(
                id="patient-health",
                weight=0.8,
                matrix=health_matrix,
                source="external",
                external_levels={"C1": 2, "C2": 1},
            ),
        )
    )
