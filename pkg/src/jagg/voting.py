"""Embedding voting problems into judgment aggregation.

A set of candidate options induces one issue per ordered pair (lower
index first), and a transitivity constraint whose models are exactly the
linear orders over the options. Votes convert to judgments and back, and
the Condorcet winner question corresponds to majority consistency of the
converted profile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from pathlib import Path

from .core import Judgment, Profile, is_rational, majority_judgment
from .errors import FileFormatError, NotRationalError
from .formula import Agenda, And, Formula, Implies, Not, Or, Var, _IDENT_RE


@dataclass(frozen=True)
class OptionSet:
    """Ordered, distinct candidate names; the order fixes issue naming."""

    options: tuple[str, ...]

    def __post_init__(self):
        options = tuple(self.options)
        if len(options) < 2:
            raise ValueError("need at least two options")
        if len(set(options)) != len(options):
            raise ValueError("options must be distinct")
        for name in options:
            if not _IDENT_RE.match(name):
                raise ValueError(f"invalid option name: {name!r}")
        object.__setattr__(self, "options", options)

    def __len__(self) -> int:
        return len(self.options)


@dataclass(frozen=True)
class LinearOrder:
    """A vote: strict ranking of all options, best first."""

    options: OptionSet
    ranking: tuple[str, ...]

    def __post_init__(self):
        if sorted(self.ranking) != sorted(self.options.options):
            raise ValueError(
                f"ranking {self.ranking!r} is not a permutation of the options"
            )
        object.__setattr__(self, "ranking", tuple(self.ranking))

    def prefers(self, a: str, b: str) -> bool:
        return self.ranking.index(a) < self.ranking.index(b)

    def __str__(self) -> str:
        return ">".join(self.ranking)


def pair_issue(a: str, b: str) -> str:
    return f"{a}P{b}"


def build_preference_agenda(o: OptionSet) -> tuple[Agenda, Formula]:
    """One issue per option pair plus the transitivity constraint.

    Each ordered triple contributes both directions of the transitivity
    implication (for the issue values and for their negations), so that
    the rational judgments are exactly the linear orders. With only two
    options there is nothing to constrain and a tautology is used.
    """
    names = [
        pair_issue(a, b) for a, b in itertools.combinations(o.options, 2)
    ]
    agenda = Agenda(tuple(names))
    clauses: list[Formula] = []
    for a, b, c in itertools.combinations(o.options, 3):
        ab, bc, ac = Var(pair_issue(a, b)), Var(pair_issue(b, c)), Var(pair_issue(a, c))
        clauses.append(Implies(And(ab, bc), ac))
        clauses.append(Implies(And(Not(ab), Not(bc)), Not(ac)))
    if not clauses:
        first = Var(names[0])
        return agenda, Or(first, Not(first))
    return agenda, reduce(And, clauses)


def vote_to_judgment(v: LinearOrder, agenda: Agenda) -> Judgment:
    bits = []
    for a, b in itertools.combinations(v.options.options, 2):
        assert agenda.issues[len(bits)] == pair_issue(a, b)
        bits.append(1 if v.prefers(a, b) else 0)
    return Judgment(tuple(bits), agenda)


def judgment_to_vote(j: Judgment, o: OptionSet) -> LinearOrder:
    """Invert the embedding; fails unless the judgment is a linear order."""
    wins = {name: 0 for name in o.options}
    position = 0
    for a, b in itertools.combinations(o.options, 2):
        if j.bits[position]:
            wins[a] += 1
        else:
            wins[b] += 1
        position += 1
    ranking = tuple(sorted(o.options, key=lambda name: -wins[name]))
    if len(set(wins.values())) != len(o.options):
        raise NotRationalError(f"judgment {j} does not encode a linear order")
    vote = LinearOrder(o, ranking)
    if vote_to_judgment(vote, j.agenda) != j:
        raise NotRationalError(f"judgment {j} does not encode a linear order")
    return vote


def votes_to_profile(votes: list[LinearOrder], agenda: Agenda) -> Profile:
    return Profile(tuple(vote_to_judgment(v, agenda) for v in votes))


def condorcet_winner(votes: list[LinearOrder]) -> str | None:
    """The option beating every other in strict pairwise majority, if any."""
    if not votes:
        raise ValueError("no votes")
    options = votes[0].options.options
    for candidate in options:
        beats_all = all(
            sum(v.prefers(candidate, other) for v in votes) * 2 > len(votes)
            for other in options
            if other != candidate
        )
        if beats_all:
            return candidate
    return None


def is_majority_consistent(p: Profile, gamma: Formula) -> bool:
    """Is the issue-wise strict-majority judgment rational?

    Per-issue ties propagate as :class:`MajorityTieError`; use an odd
    number of agents.
    """
    return is_rational(majority_judgment(p), gamma)


def load_votes(path: str | Path, options: OptionSet) -> list[LinearOrder]:
    """Read a votes file: one ranking per line, options joined by ``>``."""
    path = Path(path)
    votes = []
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        names = tuple(part.strip() for part in line.split(">"))
        try:
            votes.append(LinearOrder(options, names))
        except ValueError as exc:
            raise FileFormatError(f"{path}:{number}: {exc}") from None
    if not votes:
        raise FileFormatError(f"{path}: no votes")
    return votes
