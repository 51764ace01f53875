"""Judgments, profiles, and the elementary distance and majority notions.

A judgment assigns 0 or 1 to every agenda issue. A profile is one
judgment per agent (agents are indexed from 0). Rationality is always a
property relative to a constraint and is checked where it matters, never
stored on the judgment itself.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import AgendaMismatchError, FileFormatError, MajorityTieError, NotRationalError
from .formula import Agenda, Formula, evaluate


@dataclass(frozen=True, order=True)
class Judgment:
    """Fixed-length 0/1 assignment aligned with an agenda."""

    bits: tuple[int, ...]
    agenda: Agenda

    def __post_init__(self):
        bits = tuple(self.bits)
        if len(bits) != len(self.agenda):
            raise ValueError(
                f"judgment has {len(bits)} bits for {len(self.agenda)} issues"
            )
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"judgment bits must be 0 or 1, got {bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str, agenda: Agenda) -> "Judgment":
        if any(c not in "01" for c in text):
            raise ValueError(f"judgment string must be over 0/1, got {text!r}")
        return cls(tuple(int(c) for c in text), agenda)

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def value(self, issue: str) -> int:
        return self.bits[self.agenda.position(issue)]

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class Profile:
    """Ordered list of judgments, one per agent, over a common agenda."""

    judgments: tuple[Judgment, ...]

    def __post_init__(self):
        judgments = tuple(self.judgments)
        if not judgments:
            raise ValueError("profile needs at least one agent")
        agenda = judgments[0].agenda
        for j in judgments[1:]:
            if j.agenda != agenda:
                raise AgendaMismatchError("profile mixes agendas")
        object.__setattr__(self, "judgments", judgments)

    @classmethod
    def from_strings(cls, rows: list[str] | tuple[str, ...], agenda: Agenda) -> "Profile":
        return cls(tuple(Judgment.from_string(row, agenda) for row in rows))

    @property
    def agenda(self) -> Agenda:
        return self.judgments[0].agenda

    @property
    def n(self) -> int:
        return len(self.judgments)

    def __len__(self) -> int:
        return len(self.judgments)

    def __getitem__(self, agent: int) -> Judgment:
        return self.judgments[agent]

    def __iter__(self) -> Iterator[Judgment]:
        return iter(self.judgments)

    def distinct(self) -> frozenset[Judgment]:
        """The set of distinct judgments appearing in the profile."""
        return frozenset(self.judgments)


def _require_same_agenda(a: Judgment, b: Judgment) -> None:
    if a.agenda != b.agenda:
        raise AgendaMismatchError("judgments over different agendas")


def hamming_distance(a: Judgment, b: Judgment) -> int:
    """Number of issues on which the two judgments differ."""
    _require_same_agenda(a, b)
    return sum(x != y for x, y in zip(a.bits, b.bits))


def drastic_distance(a: Judgment, b: Judgment) -> int:
    """0 if the judgments are identical, 1 otherwise."""
    _require_same_agenda(a, b)
    return 0 if a.bits == b.bits else 1


def is_between(c: Judgment, a: Judgment, b: Judgment) -> bool:
    """Issue-agreement betweenness.

    ``c`` lies between ``a`` and ``b`` when all three are pairwise
    distinct and ``c`` sides with ``a`` and ``b`` on every issue where
    they agree. When ``a`` and ``b`` agree nowhere the condition is
    vacuous, so any third judgment is between them.
    """
    _require_same_agenda(a, b)
    _require_same_agenda(a, c)
    if c == a or c == b or a == b:
        return False
    return all(
        cx == ax for cx, ax, bx in zip(c.bits, a.bits, b.bits) if ax == bx
    )


def is_unanimous(p: Profile) -> bool:
    return len(p.distinct()) == 1


def plurality_judgments(p: Profile) -> frozenset[Judgment]:
    """The mode set: all judgments occurring a maximal number of times."""
    counts = Counter(p.judgments)
    top = max(counts.values())
    return frozenset(j for j, k in counts.items() if k == top)


def literal_plurality_predicate(p: Profile, j: Judgment) -> bool:
    """Weak-majority reading of plurality: at least as many agents hold
    ``j`` as do not. Kept separate from the mode set because the two
    readings disagree on tied profiles."""
    holders = sum(1 for entry in p if entry == j)
    return holders >= p.n - holders


def majority_judgment(p: Profile) -> Judgment:
    """Issue-wise strict-majority judgment.

    The result need not be rational for any constraint; callers check.
    Raises :class:`MajorityTieError` naming the first issue whose votes
    split evenly (cannot happen for an odd number of agents).
    """
    agenda = p.agenda
    bits = []
    for i, issue in enumerate(agenda.issues):
        ones = sum(j.bits[i] for j in p)
        if 2 * ones == p.n:
            raise MajorityTieError(issue)
        bits.append(1 if 2 * ones > p.n else 0)
    return Judgment(tuple(bits), agenda)


def is_rational(j: Judgment, gamma: Formula) -> bool:
    return evaluate(gamma, j)


def load_profile(path: str | Path, agenda: Agenda, gamma: Formula) -> Profile:
    """Read a profile file: one 0/1 bitstring per line, agent order.

    Every judgment must be rational for ``gamma``; an irrational line is
    rejected with its line number.
    """
    path = Path(path)
    rows = [
        (number, line.strip())
        for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not rows:
        raise FileFormatError(f"{path}: empty profile")
    judgments = []
    for number, row in rows:
        if len(row) != len(agenda) or any(c not in "01" for c in row):
            raise FileFormatError(
                f"{path}:{number}: expected a {len(agenda)}-bit string, got {row!r}"
            )
        j = Judgment.from_string(row, agenda)
        if not is_rational(j, gamma):
            raise NotRationalError(
                f"{path}:{number}: judgment {row} violates the constraint"
            )
        judgments.append(j)
    return Profile(tuple(judgments))
