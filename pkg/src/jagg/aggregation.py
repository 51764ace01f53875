"""One-shot distance-based aggregation and unanimity checks.

The rule scores every rational judgment by folding its path distances to
the profile (the fold is a parameter, but only the sum is supported and
tested) and returns all minimisers together with the full score map.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core import Judgment, Profile
from .graph import AgendaGraph


@dataclass(frozen=True)
class AggregationResult:
    winners: frozenset[Judgment]
    scores: Mapping[Judgment, int]


def distance_based_rule(
    g: AgendaGraph,
    p: Profile,
    aggregator: Callable[[Iterable[int]], int] = sum,
) -> AggregationResult:
    """Score every rational judgment and return all minimisers.

    Exhaustive by construction, which makes it a convenient reference
    point for the iterative procedure's outcomes.
    """
    scores = {
        j: aggregator(g.path_distance(entry, j) for entry in p)
        for j in g.rational_judgments
    }
    best = min(scores.values())
    winners = frozenset(j for j, s in scores.items() if s == best)
    return AggregationResult(winners=winners, scores=scores)


class Strength(enum.Enum):
    WEAK = "weak"
    STRONG = "strong"


def check_propositional_unanimity(
    p0: Profile, result: Iterable[Judgment], strength: Strength
) -> bool:
    """Do the output judgments preserve the issue values everyone shares?

    For every issue on which all of ``p0`` agrees, the weak check wants
    some result judgment to keep that value, the strong check wants all
    of them to. Vacuously true when no issue is unanimous.
    """
    outputs = list(result)
    if not outputs:
        raise ValueError("empty result set")
    for position in range(len(p0.agenda)):
        values = {j.bits[position] for j in p0}
        if len(values) != 1:
            continue
        (value,) = values
        keeps = [j.bits[position] == value for j in outputs]
        if strength is Strength.WEAK and not any(keeps):
            return False
        if strength is Strength.STRONG and not all(keeps):
            return False
    return True
