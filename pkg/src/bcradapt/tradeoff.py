"""Design-time tradeoff sweeps with crossover detection.

Two sweep kinds are supported. The benefit-cost sweep varies the benefit
scaling multiplier x at a fixed threshold T and tracks each option's
value-for-cost (T + (EB - T) * x) / EC. The desirability-risk sweep varies
the desirability weight w (risk weight 1 - w) and tracks each option's
ED * w - ER * (1 - w). Crossovers, the parameter values where two options
swap rank, are located by a grid scan refined with bisection, so any scaling
function keeps working without closed-form algebra.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO

from .decision import DecisionPolicy, ebcr_score
from .desirability import (
    IDENTITY_SCALING,
    DesirabilityMethod,
    ScalingFunction,
    ScalingKind,
    desirability,
)
from .errors import InsufficientOptions, SinkWriteError

_BISECTION_TOLERANCE = 1e-6


class SweepKind(str, Enum):
    BENEFIT_COST = "benefit-cost"
    DESIRABILITY_RISK = "desirability-risk"


@dataclass(frozen=True)
class SweepSpec:
    """A sweep over one parameter with fixed per-option inputs.

    `options` holds (option id, a, b) triples whose meaning depends on the
    kind: (id, estimated benefit, estimated cost) for the benefit-cost sweep,
    (id, desirability, risk) for the desirability-risk sweep. For the
    benefit-cost sweep `threshold` is the benefit scaling threshold T.
    """

    kind: SweepKind
    lo: float
    hi: float
    step: float
    options: tuple[tuple[str, float, float], ...]
    threshold: float = 0.0

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError("sweep range must satisfy lo < hi")
        if self.step <= 0:
            raise ValueError("sweep step must be positive")


@dataclass(frozen=True)
class CrossoverReport:
    """Per-option (parameter, value) series plus rank-flip locations."""

    series: dict[str, tuple[tuple[float, float], ...]]
    crossovers: tuple[tuple[str, str, float], ...]


def _grid(lo: float, hi: float, step: float) -> list[float]:
    count = int(round((hi - lo) / step))
    points = [lo + i * step for i in range(count + 1)]
    if points[-1] > hi + 1e-12:
        points.pop()
    return points


def _score_fn(spec: SweepSpec, a: float, b: float):
    if spec.kind is SweepKind.BENEFIT_COST:

        def value(param: float) -> float:
            scaling = ScalingFunction(
                ScalingKind.THRESHOLD_MULTIPLIER, threshold=spec.threshold, multiplier=param
            )
            return desirability(
                a, b, scaling, IDENTITY_SCALING, DesirabilityMethod.VALUE_FOR_COST
            ).estimated_desirability

    else:

        def value(param: float) -> float:
            policy = DecisionPolicy(w_desirability=param, w_risk=1.0 - param)
            return ebcr_score(a, b, policy)

    return value


def _bisect_crossover(diff, lo: float, hi: float) -> float:
    d_lo = diff(lo)
    while hi - lo > _BISECTION_TOLERANCE:
        mid = 0.5 * (lo + hi)
        d_mid = diff(mid)
        if d_mid == 0.0:
            return mid
        if (d_lo < 0) == (d_mid < 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sweep(spec: SweepSpec) -> CrossoverReport:
    """Evaluate the governing formula on the grid and locate crossovers.

    A crossover between two options is reported where the sign of their score
    difference flips between grid points (grid points where the difference is
    exactly zero do not count unless the sign differs on either side); the
    location is refined by bisection to 1e-6.
    """
    if len(spec.options) < 2:
        raise InsufficientOptions("crossover detection needs at least two options")

    params = _grid(spec.lo, spec.hi, spec.step)
    fns = {option_id: _score_fn(spec, a, b) for option_id, a, b in spec.options}
    series = {
        option_id: tuple((p, fn(p)) for p in params) for option_id, fn in sorted(fns.items())
    }

    crossovers: list[tuple[str, str, float]] = []
    ids = sorted(fns)
    for i, id_a in enumerate(ids):
        for id_b in ids[i + 1 :]:
            diff = lambda p, fa=fns[id_a], fb=fns[id_b]: fa(p) - fb(p)
            last_sign = 0
            last_param = params[0]
            for p in params:
                d = diff(p)
                sign = 0 if d == 0.0 else (1 if d > 0 else -1)
                if sign != 0:
                    if last_sign != 0 and sign != last_sign:
                        crossovers.append(
                            (id_a, id_b, _bisect_crossover(diff, last_param, p))
                        )
                    last_sign = sign
                    last_param = p
    return CrossoverReport(series=series, crossovers=tuple(crossovers))


def emit_sweep_csv(report: CrossoverReport, sink: str | Path | IO[str]) -> int:
    """Write the report as CSV ("option,param,value", 6-decimal fixed) with
    crossovers appended as comment lines. Returns the data row count."""
    rows = 0
    try:
        if isinstance(sink, (str, Path)):
            handle: IO[str] = open(sink, "w", newline="")
            close = True
        else:
            handle, close = sink, False
        try:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["option", "param", "value"])
            for option_id in sorted(report.series):
                for param, value in report.series[option_id]:
                    writer.writerow([option_id, f"{param:.6f}", f"{value:.6f}"])
                    rows += 1
            for id_a, id_b, param in report.crossovers:
                handle.write(f"# crossover,{id_a},{id_b},{param:.6f}\n")
        finally:
            if close:
                handle.close()
    except OSError as exc:
        raise SinkWriteError(f"could not write sweep CSV: {exc}") from exc
    return rows


def sweep_csv_text(report: CrossoverReport) -> str:
    buffer = io.StringIO()
    emit_sweep_csv(report, buffer)
    return buffer.getvalue()
