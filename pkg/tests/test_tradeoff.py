import io

import pytest

from bcradapt import (
    CrossoverReport,
    DecisionPolicy,
    SweepKind,
    SweepSpec,
    ebcr_score,
    emit_sweep_csv,
    sweep,
)
from bcradapt.errors import InsufficientOptions, SinkWriteError

A2_SPEC = SweepSpec(
    kind=SweepKind.DESIRABILITY_RISK,
    lo=0.0,
    hi=1.0,
    step=0.01,
    options=(("C1", 6.13, 1.8), ("C2", 4.83, 1.2)),
)

A1_SPEC = SweepSpec(
    kind=SweepKind.BENEFIT_COST,
    lo=1.0,
    hi=10.0,
    step=0.1,
    options=(("C1", 24.5, 4.0), ("C2", 29.0, 6.0)),
    threshold=25.0,
)


def test_desirability_risk_crossover_location():
    report = sweep(A2_SPEC)
    assert len(report.crossovers) == 1
    id_a, id_b, w_star = report.crossovers[0]
    assert {id_a, id_b} == {"C1", "C2"}
    assert w_star == pytest.approx(0.6 / 1.9, abs=1e-5)


def test_desirability_risk_preference_direction():
    report = sweep(A2_SPEC)
    series = {oid: dict(points) for oid, points in report.series.items()}
    assert series["C2"][0.2] > series["C1"][0.2]
    assert series["C1"][0.5] > series["C2"][0.5]


def test_benefit_cost_crossover_location():
    report = sweep(A1_SPEC)
    assert len(report.crossovers) == 1
    _, _, x_star = report.crossovers[0]
    assert x_star == pytest.approx(50.0 / 19.0, abs=1e-5)


def test_benefit_cost_series_at_one_matches_plain_value_for_cost():
    report = sweep(A1_SPEC)
    series = {oid: dict(points) for oid, points in report.series.items()}
    assert series["C1"][1.0] == 6.125
    assert series["C2"][1.0] == 29.0 / 6.0


def test_sweep_series_are_exact_reevaluations():
    report = sweep(A2_SPEC)
    inputs = {oid: (ed, er) for oid, ed, er in A2_SPEC.options}
    for option_id, points in report.series.items():
        ed, er = inputs[option_id]
        for param, value in points:
            expected = ebcr_score(ed, er, DecisionPolicy(param, 1.0 - param))
            assert abs(value - expected) <= 1e-12


def test_crossover_brackets_a_sign_change():
    report = sweep(A2_SPEC)
    _, _, w_star = report.crossovers[0]
    inputs = {oid: (ed, er) for oid, ed, er in A2_SPEC.options}

    def diff(p):
        (ed1, er1), (ed2, er2) = inputs["C1"], inputs["C2"]
        return ebcr_score(ed1, er1, DecisionPolicy(p, 1 - p)) - ebcr_score(
            ed2, er2, DecisionPolicy(p, 1 - p)
        )

    assert diff(w_star - A2_SPEC.step) * diff(w_star + A2_SPEC.step) < 0


def test_identical_options_produce_no_crossovers():
    spec = SweepSpec(
        kind=SweepKind.DESIRABILITY_RISK,
        lo=0.0,
        hi=1.0,
        step=0.1,
        options=(("a", 3.0, 1.0), ("b", 3.0, 1.0)),
    )
    report = sweep(spec)
    assert report.crossovers == ()
    assert report.series["a"] == report.series["b"]


def test_equal_risks_reduce_to_pure_desirability_comparison():
    spec = SweepSpec(
        kind=SweepKind.DESIRABILITY_RISK,
        lo=0.0,
        hi=1.0,
        step=0.05,
        options=(("hi", 5.0, 2.0), ("lo", 3.0, 2.0)),
    )
    report = sweep(spec)
    assert report.crossovers == ()
    series = {oid: dict(points) for oid, points in report.series.items()}
    for param in list(series["hi"]):
        if param > 0:
            assert series["hi"][param] > series["lo"][param]


def test_sweep_needs_two_options():
    with pytest.raises(InsufficientOptions):
        sweep(
            SweepSpec(
                kind=SweepKind.DESIRABILITY_RISK,
                lo=0.0,
                hi=1.0,
                step=0.1,
                options=(("only", 1.0, 1.0),),
            )
        )


def test_csv_row_count_and_layout():
    spec = SweepSpec(
        kind=SweepKind.DESIRABILITY_RISK,
        lo=0.0,
        hi=0.9,
        step=0.1,
        options=(("a", 2.0, 1.0), ("b", 1.0, 0.5)),
    )
    report = sweep(spec)
    buffer = io.StringIO()
    rows = emit_sweep_csv(report, buffer)
    lines = buffer.getvalue().splitlines()
    assert rows == 20
    assert lines[0] == "option,param,value"
    assert len([l for l in lines if not l.startswith("#")]) == 21
    assert lines[1].startswith("a,0.000000,")


def test_csv_empty_series_writes_header_only():
    report = CrossoverReport(series={}, crossovers=())
    buffer = io.StringIO()
    assert emit_sweep_csv(report, buffer) == 0
    assert buffer.getvalue() == "option,param,value\n"


def test_csv_includes_crossover_comment():
    buffer = io.StringIO()
    emit_sweep_csv(sweep(A2_SPEC), buffer)
    comments = [l for l in buffer.getvalue().splitlines() if l.startswith("#")]
    assert len(comments) == 1
    assert comments[0].startswith("# crossover,C1,C2,0.3157")


def test_csv_write_failure_raises_sink_error(tmp_path):
    with pytest.raises(SinkWriteError):
        emit_sweep_csv(sweep(A2_SPEC), tmp_path / "missing-dir" / "out.csv")
