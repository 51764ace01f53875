"""Agendas and propositional constraints.

An agenda is an ordered list of yes/no issues, each represented by a
propositional variable. The constraint is a formula over those variables;
the truth assignments that satisfy it are the *rational* judgments. This
module owns the formula AST, the concrete syntax, evaluation, and
exhaustive model enumeration.

Concrete syntax: identifiers ``[A-Za-z_][A-Za-z0-9_]*``, operators
``!`` ``&`` ``|`` ``->`` ``<->`` and parentheses. Precedence from
tightest to loosest is ``!``, ``&``, ``|``, ``->``, ``<->``; the two
arrow operators associate to the right.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterator, Sequence

from .errors import (
    CapacityError,
    ContradictionError,
    FileFormatError,
    FormulaSyntaxError,
    UnknownIssueError,
)

if TYPE_CHECKING:
    from .core import Judgment

#: Enumeration walks all 2^m assignments; refuse beyond this many issues
#: unless the caller raises the cap explicitly.
DEFAULT_MAX_ISSUES = 20

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Agenda:
    """Ordered, duplicate-free list of issue identifiers.

    The order is meaningful: bit ``i`` of every judgment refers to issue
    ``i`` for the lifetime of the agenda.
    """

    issues: tuple[str, ...]
    _positions: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        issues = tuple(self.issues)
        if not issues:
            raise ValueError("agenda needs at least one issue")
        for name in issues:
            if not _IDENT_RE.match(name):
                raise ValueError(f"invalid issue identifier: {name!r}")
        if len(set(issues)) != len(issues):
            raise ValueError("agenda issues must be pairwise distinct")
        object.__setattr__(self, "issues", issues)
        object.__setattr__(self, "_positions", {s: i for i, s in enumerate(issues)})

    def __len__(self) -> int:
        return len(self.issues)

    def position(self, issue: str) -> int:
        try:
            return self._positions[issue]
        except KeyError:
            raise UnknownIssueError(issue) from None

    def __contains__(self, issue: str) -> bool:
        return issue in self._positions


class Formula:
    """Base class for constraint AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|!|&|\||\(|\)))"
)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise FormulaSyntaxError(f"unexpected character {rest[0]!r}", at)
        token = match.group("ident") or match.group("op")
        tokens.append((token, match.start("ident") if match.group("ident") else match.start("op")))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, tokens: list[tuple[str, int]], agenda: Agenda, length: int):
        self.tokens = tokens
        self.agenda = agenda
        self.i = 0
        self.length = length

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.length

    def take(self) -> str:
        token = self.tokens[self.i][0]
        self.i += 1
        return token

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected token {self.peek()!r}", self.pos())
        return f

    def iff(self) -> Formula:
        left = self.implication()
        if self.peek() == "<->":
            self.take()
            return Iff(left, self.iff())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.negation()
        while self.peek() == "&":
            self.take()
            f = And(f, self.negation())
        return f

    def negation(self) -> Formula:
        if self.peek() == "!":
            self.take()
            return Not(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        token = self.peek()
        if token is None:
            raise FormulaSyntaxError("unexpected end of input", self.length)
        if token == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                raise FormulaSyntaxError("expected ')'", self.pos())
            self.take()
            return f
        if _IDENT_RE.match(token):
            self.take()
            if token not in self.agenda:
                raise UnknownIssueError(token)
            return Var(token)
        raise FormulaSyntaxError(f"unexpected token {token!r}", self.pos())


def parse_formula(text: str, agenda: Agenda) -> Formula:
    """Parse constraint text over the given agenda.

    Raises :class:`FormulaSyntaxError` with the offending position, or
    :class:`UnknownIssueError` if a variable is not an agenda issue.
    """
    return _Parser(_tokenize(text), agenda, len(text)).parse()


# Precedence levels used by the printer; higher binds tighter.
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Var: 6}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_RIGHT_ASSOC = (Iff, Implies)


def format_formula(f: Formula) -> str:
    """Render a formula so that parsing the result reproduces it exactly."""
    prec = _PREC[type(f)]
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.operand)
        if _PREC[type(f.operand)] < prec:
            inner = f"({inner})"
        return f"!{inner}"
    left, right = format_formula(f.left), format_formula(f.right)
    lp, rp = _PREC[type(f.left)], _PREC[type(f.right)]
    if isinstance(f, _RIGHT_ASSOC):
        if lp <= prec:
            left = f"({left})"
        if rp < prec:
            right = f"({right})"
    else:
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def evaluate_bits(f: Formula, bits: Sequence[int], agenda: Agenda) -> bool:
    """Classical two-valued semantics of ``f`` on one truth assignment."""
    if isinstance(f, Var):
        return bool(bits[agenda.position(f.name)])
    if isinstance(f, Not):
        return not evaluate_bits(f.operand, bits, agenda)
    left = evaluate_bits(f.left, bits, agenda)
    if isinstance(f, And):
        return left and evaluate_bits(f.right, bits, agenda)
    if isinstance(f, Or):
        return left or evaluate_bits(f.right, bits, agenda)
    if isinstance(f, Implies):
        return (not left) or evaluate_bits(f.right, bits, agenda)
    if isinstance(f, Iff):
        return left == evaluate_bits(f.right, bits, agenda)
    raise TypeError(f"not a formula node: {f!r}")


def evaluate(f: Formula, judgment: "Judgment") -> bool:
    """True iff the judgment is a model of ``f``."""
    return evaluate_bits(f, judgment.bits, judgment.agenda)


def iter_assignments(agenda: Agenda) -> Iterator[tuple[int, ...]]:
    """All 2^m bit tuples in lexicographic order."""
    return itertools.product((0, 1), repeat=len(agenda))


def enumerate_models(
    agenda: Agenda, gamma: Formula, max_issues: int = DEFAULT_MAX_ISSUES
) -> tuple["Judgment", ...]:
    """All rational judgments for the constraint, in lexicographic bit order.

    Exhaustive over 2^m assignments. Raises :class:`CapacityError` beyond
    ``max_issues`` issues and :class:`ContradictionError` when the
    constraint has no model at all.
    """
    from .core import Judgment

    if len(agenda) > max_issues:
        raise CapacityError(
            f"agenda has {len(agenda)} issues; enumeration capped at {max_issues}"
        )
    models = tuple(
        Judgment(bits, agenda)
        for bits in iter_assignments(agenda)
        if evaluate_bits(gamma, bits, agenda)
    )
    if not models:
        raise ContradictionError("constraint has no model")
    return models


def load_agenda(path: str | Path) -> tuple[Agenda, Formula]:
    """Read an agenda file.

    Format: one line ``issues: <id> <id> ...`` followed by one line
    ``constraint: <formula>``. Blank lines and ``#`` comments are ignored.
    """
    path = Path(path)
    lines = [
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(lines) != 2 or not lines[0].startswith("issues:") or not lines[1].startswith("constraint:"):
        raise FileFormatError(
            f"{path}: expected an 'issues:' line followed by a 'constraint:' line"
        )
    issue_names = lines[0][len("issues:"):].split()
    if not issue_names:
        raise FileFormatError(f"{path}: no issues listed")
    agenda = Agenda(tuple(issue_names))
    gamma = parse_formula(lines[1][len("constraint:"):], agenda)
    return agenda, gamma
