"""Round-based consensus iteration over an agenda graph.

Each round, every agent looks at the same round-start profile, computes
the rational hull judgments adjacent to its own that strictly reduce its
summed path distance to the other agents, and moves to one of the best
of them (chosen uniformly from its own deterministic random stream).
The run ends on a unanimous profile, on a profile that repeats the
previous one verbatim, or at the round cap.

The centralised variant keeps the history of distinct-judgment sets and,
on the first repeat of a set, lets a seeded central choice pick one of
the current judgments as the consensus.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from .core import Judgment, Profile, is_unanimous
from .errors import NotRationalError
from .graph import AgendaGraph, GraphKind, HullMode
from .formula import format_formula


class MoveSemantics(enum.Enum):
    """How the per-agent move set is carved out of the hull.

    ``ARGMIN_ADJACENT`` minimises the profile distance over the adjacent
    improving candidates only. ``LITERAL_INTERSECTION`` intersects the
    global hull-wide minimisers with the adjacent improving set, which
    can be empty even when improving neighbours exist; it is kept for
    auditing the difference.
    """

    ARGMIN_ADJACENT = "argmin"
    LITERAL_INTERSECTION = "literal"


class Algorithm(enum.IntEnum):
    ONE = 1
    TWO = 2


@dataclass(frozen=True)
class IterationConfig:
    graph_kind: GraphKind | None = None
    hull_mode: HullMode = HullMode.INTERVAL_UNION
    max_rounds: int | None = None
    master_seed: int = 0
    move_semantics: MoveSemantics = MoveSemantics.ARGMIN_ADJACENT
    algorithm: Algorithm = Algorithm.ONE

    def __post_init__(self):
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")


@dataclass
class AgentState:
    """One agent: identifier, current judgment, private random stream."""

    id: int
    current: Judgment
    rng: random.Random


@dataclass(frozen=True)
class RoundRecord:
    round: int
    profile_before: Profile
    moves_sets: tuple[frozenset[Judgment], ...]
    choices: tuple[Judgment | None, ...]
    profile_after: Profile


@dataclass(frozen=True)
class Consensus:
    judgment: Judgment
    rounds: int


@dataclass(frozen=True)
class FixpointNoConsensus:
    profile: Profile
    rounds: int


@dataclass(frozen=True)
class RoundLimit:
    profile: Profile
    rounds: int


@dataclass(frozen=True)
class LoopDetected:
    """A distinct-judgment set seen twice (centralised variant only)."""

    profile_set: frozenset[Judgment]
    first_seen_round: int
    rounds: int


@dataclass(frozen=True)
class Algorithm2Consensus:
    judgment: Judgment
    rounds: int
    resolved_from_loop: bool
    loop: LoopDetected | None = None


Outcome = Consensus | FixpointNoConsensus | RoundLimit | LoopDetected | Algorithm2Consensus


def distance_to_rest(g: AgendaGraph, p: Profile, agent: int, j: Judgment) -> int:
    """Summed path distance from ``j`` to every other agent's judgment."""
    return sum(
        g.path_distance(j, p[other]) for other in range(p.n) if other != agent
    )


def moves(
    g: AgendaGraph,
    p: Profile,
    agent: int,
    hull_mode: HullMode = HullMode.INTERVAL_UNION,
    semantics: MoveSemantics = MoveSemantics.ARGMIN_ADJACENT,
    hull: frozenset[Judgment] | None = None,
) -> frozenset[Judgment]:
    """The agent's move options against the current profile.

    Pass ``hull`` to reuse a hull already computed for this profile.
    """
    if hull is None:
        hull = g.convex_hull(p.distinct(), hull_mode)
    current = p[agent]
    score_current = distance_to_rest(g, p, agent, current)
    improving = {}
    for j in hull:
        if j == current or not g.is_rational(j) or not g.adjacent(current, j):
            continue
        score = distance_to_rest(g, p, agent, j)
        if score < score_current:
            improving[j] = score

    if semantics is MoveSemantics.ARGMIN_ADJACENT:
        if not improving:
            return frozenset()
        best = min(improving.values())
        return frozenset(j for j, s in improving.items() if s == best)

    scores = {
        j: distance_to_rest(g, p, agent, j) for j in hull if g.is_rational(j)
    }
    best = min(scores.values())
    return frozenset(j for j in improving if scores[j] == best)


def step(
    g: AgendaGraph,
    p: Profile,
    config: IterationConfig,
    rngs: Sequence[random.Random],
    round_index: int = 1,
    hull: frozenset[Judgment] | None = None,
) -> tuple[Profile, RoundRecord]:
    """One synchronous round: all agents decide against the same profile."""
    if hull is None:
        hull = g.convex_hull(p.distinct(), config.hull_mode)
    moves_sets = tuple(
        moves(g, p, i, config.hull_mode, config.move_semantics, hull=hull)
        for i in range(p.n)
    )
    choices: list[Judgment | None] = []
    for i, options in enumerate(moves_sets):
        if options:
            choices.append(rngs[i].choice(sorted(options)))
        else:
            choices.append(None)
    after = Profile(
        tuple(choice if choice is not None else p[i] for i, choice in enumerate(choices))
    )
    record = RoundRecord(round_index, p, moves_sets, tuple(choices), after)
    return after, record


def agent_states(p0: Profile, master_seed: int) -> list[AgentState]:
    """Per-agent streams derived deterministically from the master seed."""
    return [
        AgentState(i, p0[i], random.Random(f"{master_seed}:agent:{i}"))
        for i in range(p0.n)
    ]


def default_round_limit(
    g: AgendaGraph, p0: Profile, hull_mode: HullMode
) -> int:
    """Generous cap: 10 * agents * profile diameter * hull size, at least 1."""
    hull = g.convex_hull(p0.distinct(), hull_mode)
    return max(1, 10 * p0.n * g.diameter(p0.distinct()) * len(hull))


def _check_start(g: AgendaGraph, p0: Profile) -> None:
    for j in p0:
        if j not in g or not g.is_rational(j):
            raise NotRationalError(f"starting judgment {j} is not rational")


def run_algorithm1(
    g: AgendaGraph, p0: Profile, config: IterationConfig
) -> tuple[Outcome, list[RoundRecord]]:
    """Iterate until unanimity, an unchanged profile, or the round cap."""
    _check_start(g, p0)
    cap = config.max_rounds or default_round_limit(g, p0, config.hull_mode)
    states = agent_states(p0, config.master_seed)
    rngs = [s.rng for s in states]
    records: list[RoundRecord] = []
    profile = p0
    for t in range(1, cap + 1):
        after, record = step(g, profile, config, rngs, round_index=t)
        records.append(record)
        for state, j in zip(states, after):
            state.current = j
        if is_unanimous(after):
            return Consensus(after[0], t), records
        if after == profile:
            return FixpointNoConsensus(after, t), records
        profile = after
    return RoundLimit(profile, cap), records


def run_algorithm2(
    g: AgendaGraph, p0: Profile, config: IterationConfig
) -> tuple[Outcome, list[RoundRecord]]:
    """Centralised variant: terminate on the first repeated judgment set.

    A profile repeating verbatim repeats its judgment set as well, so
    this variant never reports a fixpoint; the repeat is resolved by a
    seeded central choice of one judgment from the current set, counted
    as one extra round.
    """
    _check_start(g, p0)
    cap = config.max_rounds or default_round_limit(g, p0, config.hull_mode)
    states = agent_states(p0, config.master_seed)
    rngs = [s.rng for s in states]
    central = random.Random(f"{config.master_seed}:central")
    seen: dict[frozenset[Judgment], int] = {p0.distinct(): 0}
    records: list[RoundRecord] = []
    profile = p0
    for t in range(1, cap + 1):
        after, record = step(g, profile, config, rngs, round_index=t)
        records.append(record)
        for state, j in zip(states, after):
            state.current = j
        if is_unanimous(after):
            return Algorithm2Consensus(after[0], t, resolved_from_loop=False), records
        key = after.distinct()
        if key in seen:
            loop = LoopDetected(key, seen[key], t)
            choice = central.choice(sorted(key))
            return (
                Algorithm2Consensus(choice, t + 1, resolved_from_loop=True, loop=loop),
                records,
            )
        seen[key] = t
        profile = after
    return RoundLimit(profile, cap), records


def run(
    g: AgendaGraph, p0: Profile, config: IterationConfig
) -> tuple[Outcome, list[RoundRecord]]:
    if config.graph_kind is not None and config.graph_kind is not g.kind:
        raise ValueError(
            f"config built for {config.graph_kind.value} graph, got {g.kind.value}"
        )
    if config.algorithm is Algorithm.TWO:
        return run_algorithm2(g, p0, config)
    return run_algorithm1(g, p0, config)


def verify_trace(
    g: AgendaGraph,
    p0: Profile,
    config: IterationConfig,
    outcome: Outcome,
    records: list[RoundRecord],
    recompute_moves: bool = True,
) -> list[str]:
    """Cross-check a finished run against the rules it must obey.

    Returns human-readable violation strings; an empty list means the
    trace is internally consistent: rounds chain, every executed move
    was a recorded option inside the round hull that strictly improved
    the mover's profile distance, and the outcome matches the final
    profile. A consensus reached by moves also requires the start
    profile to have no rational gap wider than one step.
    """
    violations: list[str] = []
    previous = p0
    for record in records:
        t = record.round
        if record.profile_before != previous:
            violations.append(f"round {t}: profile does not chain from previous round")
        hull = g.convex_hull(record.profile_before.distinct(), config.hull_mode)
        if recompute_moves:
            expected = tuple(
                moves(
                    g,
                    record.profile_before,
                    i,
                    config.hull_mode,
                    config.move_semantics,
                    hull=hull,
                )
                for i in range(record.profile_before.n)
            )
            if expected != record.moves_sets:
                violations.append(f"round {t}: recorded move sets are not reproducible")
        for i, choice in enumerate(record.choices):
            if choice is None:
                if record.profile_after[i] != record.profile_before[i]:
                    violations.append(f"round {t}: agent {i} changed without a choice")
                continue
            if choice not in record.moves_sets[i]:
                violations.append(f"round {t}: agent {i} chose outside its move set")
            if record.profile_after[i] != choice:
                violations.append(f"round {t}: agent {i} did not apply its choice")
            if choice not in hull:
                violations.append(f"round {t}: agent {i} left the hull")
            before_score = distance_to_rest(
                g, record.profile_before, i, record.profile_before[i]
            )
            after_score = distance_to_rest(g, record.profile_before, i, choice)
            if after_score >= before_score:
                violations.append(f"round {t}: agent {i} move did not strictly improve")
        previous = record.profile_after

    if isinstance(outcome, Consensus):
        if records and not is_unanimous(records[-1].profile_after):
            violations.append("consensus outcome but final profile is not unanimous")
        if outcome.rounds != len(records):
            violations.append("consensus round count does not match the trace")
    if isinstance(outcome, FixpointNoConsensus):
        if not records or records[-1].profile_after != records[-1].profile_before:
            violations.append("fixpoint outcome but the last round changed the profile")
        if records and is_unanimous(records[-1].profile_after):
            violations.append("fixpoint outcome on a unanimous profile")
    if isinstance(outcome, Algorithm2Consensus):
        if outcome.resolved_from_loop:
            if outcome.rounds != len(records) + 1:
                violations.append("loop resolution must count one extra round")
            if records and outcome.judgment not in records[-1].profile_after.distinct():
                violations.append("loop resolution chose a judgment outside the profile")
        elif records and not is_unanimous(records[-1].profile_after):
            violations.append("consensus outcome but final profile is not unanimous")
    moved_to_consensus = isinstance(outcome, Consensus) or (
        isinstance(outcome, Algorithm2Consensus) and not outcome.resolved_from_loop
    )
    if moved_to_consensus and not g.profile_epsilon_connected(p0, 1):
        violations.append("consensus reached from a start profile with rational gaps")
    return violations


def outcome_document(outcome: Outcome) -> dict:
    if isinstance(outcome, Consensus):
        return {
            "status": "consensus",
            "judgment": str(outcome.judgment),
            "rounds": outcome.rounds,
        }
    if isinstance(outcome, FixpointNoConsensus):
        return {
            "status": "fixpoint_no_consensus",
            "profile": [str(j) for j in outcome.profile],
            "rounds": outcome.rounds,
        }
    if isinstance(outcome, RoundLimit):
        return {
            "status": "round_limit",
            "profile": [str(j) for j in outcome.profile],
            "rounds": outcome.rounds,
        }
    if isinstance(outcome, Algorithm2Consensus):
        doc = {
            "status": "algorithm2_consensus",
            "judgment": str(outcome.judgment),
            "rounds": outcome.rounds,
            "resolved_from_loop": outcome.resolved_from_loop,
            "loop": None,
        }
        if outcome.loop is not None:
            doc["loop"] = {
                "profile_set": sorted(str(j) for j in outcome.loop.profile_set),
                "first_seen_round": outcome.loop.first_seen_round,
                "rounds": outcome.loop.rounds,
            }
        return doc
    if isinstance(outcome, LoopDetected):
        return {
            "status": "loop_detected",
            "profile_set": sorted(str(j) for j in outcome.profile_set),
            "first_seen_round": outcome.first_seen_round,
            "rounds": outcome.rounds,
        }
    raise TypeError(f"not an outcome: {outcome!r}")


def trace_document(
    g: AgendaGraph,
    p0: Profile,
    config: IterationConfig,
    outcome: Outcome,
    records: list[RoundRecord],
) -> dict:
    """JSON-ready run record; the schema is pinned in docs/schemas."""
    return {
        "config": {
            "graph": g.kind.value,
            "hull": config.hull_mode.value,
            "moves": config.move_semantics.value,
            "algorithm": int(config.algorithm),
            "seed": config.master_seed,
            "max_rounds": config.max_rounds
            or default_round_limit(g, p0, config.hull_mode),
        },
        "agenda": {
            "issues": list(g.agenda.issues),
            "constraint": format_formula(g.gamma),
        },
        "start_profile": [str(j) for j in p0],
        "rounds": [
            {
                "round": r.round,
                "profile_before": [str(j) for j in r.profile_before],
                "moves": [sorted(str(j) for j in options) for options in r.moves_sets],
                "choices": [None if c is None else str(c) for c in r.choices],
                "profile_after": [str(j) for j in r.profile_after],
            }
            for r in records
        ],
        "outcome": outcome_document(outcome),
    }
