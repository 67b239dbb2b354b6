"""Option selection: weighted desirability minus weighted risk, argmax'd.

Each surviving option gets the score ED * w_desirability - ER * w_risk; the
maximiser wins, with ties broken by the lexicographically smaller option id
so selection is deterministic. Keeping the current configuration can
optionally participate as a zero-desirability baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .domain import Configuration
from .errors import NoViableOption


@dataclass(frozen=True)
class DecisionPolicy:
    """Weights for desirability vs risk plus selection behaviour.

    The bundled scenarios keep w_desirability + w_risk = 1 (the loader
    enforces it); the scoring itself tolerates unnormalised weights, and the
    argmax is invariant under scaling both by the same positive factor.
    """

    w_desirability: float
    w_risk: float
    tie_break: str = "lexicographic"
    include_current_as_baseline: bool = False


@dataclass(frozen=True)
class ScoreBreakdown:
    desirability: float
    risk: float
    score: float


@dataclass(frozen=True)
class Decision:
    selected: str
    scores: dict[str, float]
    rationale: dict[str, ScoreBreakdown]
    no_adaptation: bool = False


def ebcr_score(desirability: float, risk: float, policy: DecisionPolicy) -> float:
    """Benefit-cost-risk score: weighted desirability minus weighted risk."""
    return desirability * policy.w_desirability - risk * policy.w_risk


def select(
    current: Configuration | str,
    triples: Sequence[tuple[Configuration | str, float, float]],
    policy: DecisionPolicy,
    current_risk: float = 0.0,
) -> Decision:
    """Score every (option, desirability, risk) triple and pick the argmax.

    With `include_current_as_baseline` the current configuration competes as
    well, carrying zero desirability (no benefit, no cost) and its own risk;
    selecting it means "no adaptation".
    """
    if not triples:
        raise NoViableOption("no adaptation options survived to selection")
    current_id = current if isinstance(current, str) else current.id

    entries: list[tuple[str, float, float]] = []
    for option, ed, er in triples:
        option_id = option if isinstance(option, str) else option.id
        entries.append((option_id, ed, er))
    if policy.include_current_as_baseline and all(oid != current_id for oid, _, _ in entries):
        entries.append((current_id, 0.0, current_risk))

    scores: dict[str, float] = {}
    rationale: dict[str, ScoreBreakdown] = {}
    for option_id, ed, er in entries:
        score = ebcr_score(ed, er, policy)
        scores[option_id] = score
        rationale[option_id] = ScoreBreakdown(ed, er, score)

    selected = None
    best = -float("inf")
    for option_id in sorted(scores):
        if scores[option_id] > best:
            best = scores[option_id]
            selected = option_id
    return Decision(
        selected=selected,
        scores=scores,
        rationale=rationale,
        no_adaptation=selected == current_id,
    )
