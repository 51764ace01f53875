"""Agenda graphs and their geodesic geometry.

Three graphs are built over the judgments of an agenda:

* ``complete`` — every rational judgment, all pairs adjacent; the path
  distance is the drastic distance (0 or 1).
* ``hamming`` — every assignment (rational or not), adjacent when they
  differ on exactly one issue; the graph is the m-cube and the path
  distance is the Hamming distance.
* ``model`` — only rational judgments, adjacent when no third rational
  judgment sits between them (issue-agreement betweenness); distances
  come from breadth-first search.

On top of the graphs live intervals (vertices on shortest paths), convex
hulls in two flavours, eccentricity/diameter machinery, simple-cycle
detection on induced subgraphs, the gap-based connectedness test, and
profile classification.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import Judgment, Profile, drastic_distance, hamming_distance
from .errors import InternalInvariantError, NotRationalError, VertexNotInGraphError
from .formula import DEFAULT_MAX_ISSUES, Agenda, Formula, enumerate_models, format_formula


class GraphKind(enum.Enum):
    COMPLETE = "complete"
    HAMMING = "hamming"
    MODEL = "model"


class HullMode(enum.Enum):
    """Two readings of the convex hull of a judgment set.

    ``CLOSURE`` iterates pairwise intervals to a fixpoint, which is the
    least interval-closed superset. ``INTERVAL_UNION`` performs a single
    union of pairwise intervals; the two differ whenever that union is
    not already interval-closed.
    """

    CLOSURE = "closure"
    INTERVAL_UNION = "union"


@dataclass(frozen=True)
class ProfileClassification:
    """Structural summary of a profile against one agenda graph.

    ``class_a`` holds when the hull-induced subgraph is a tree and
    ``class_b`` when its maximum degree is at most 2; neither implies
    the other. ``diameter`` is taken over the profile's judgment set,
    not the hull.
    """

    one_connected: bool
    equidistant: bool
    class_a: bool
    class_b: bool
    diameter: int
    hull_size: int
    hull_cycles: tuple[int, ...]


class AgendaGraph:
    """Immutable agenda graph with precomputed rational set and distances.

    Hamming and complete graphs use their closed-form path distances
    (the bit-flip metric and the drastic metric are exactly the shortest
    path lengths); the model graph stores an all-pairs table filled by
    BFS at build time.
    """

    def __init__(
        self,
        kind: GraphKind,
        agenda: Agenda,
        gamma: Formula,
        vertices: tuple[Judgment, ...],
        rational_flags: tuple[bool, ...],
        adjacency: tuple[frozenset[int], ...] | None,
        dist: tuple[tuple[int, ...], ...] | None,
    ):
        self.kind = kind
        self.agenda = agenda
        self.gamma = gamma
        self.vertices = vertices
        self._index = {j: i for i, j in enumerate(vertices)}
        self._rational_flags = rational_flags
        self._adjacency = adjacency
        self._dist = dist
        self.rational_judgments = tuple(
            j for j, r in zip(vertices, rational_flags) if r
        )

    # -- membership ----------------------------------------------------

    def __contains__(self, j: Judgment) -> bool:
        return j in self._index

    def _vertex(self, j: Judgment) -> int:
        try:
            return self._index[j]
        except KeyError:
            raise VertexNotInGraphError(
                f"{j} is not a vertex of the {self.kind.value} graph"
            ) from None

    def is_rational(self, j: Judgment) -> bool:
        return self._rational_flags[self._vertex(j)]

    # -- metric and adjacency -------------------------------------------

    def path_distance(self, a: Judgment, b: Judgment) -> int:
        ia, ib = self._vertex(a), self._vertex(b)
        if self.kind is GraphKind.HAMMING:
            return hamming_distance(a, b)
        if self.kind is GraphKind.COMPLETE:
            return drastic_distance(a, b)
        return self._dist[ia][ib]

    def adjacent(self, a: Judgment, b: Judgment) -> bool:
        return self.path_distance(a, b) == 1

    def neighbors(self, j: Judgment) -> Iterator[Judgment]:
        i = self._vertex(j)
        if self.kind is GraphKind.HAMMING:
            for pos in range(len(self.agenda)):
                flipped = list(j.bits)
                flipped[pos] = 1 - flipped[pos]
                yield Judgment(tuple(flipped), self.agenda)
        elif self.kind is GraphKind.COMPLETE:
            for other in self.vertices:
                if other != j:
                    yield other
        else:
            for k in sorted(self._adjacency[i]):
                yield self.vertices[k]

    # -- intervals and hulls ---------------------------------------------

    def interval(self, a: Judgment, b: Judgment) -> frozenset[Judgment]:
        """All vertices on shortest paths from ``a`` to ``b`` (inclusive)."""
        self._vertex(a), self._vertex(b)
        if a == b:
            return frozenset((a,))
        if self.kind is GraphKind.COMPLETE:
            return frozenset((a, b))
        if self.kind is GraphKind.HAMMING:
            free = [i for i, (x, y) in enumerate(zip(a.bits, b.bits)) if x != y]
            members = []
            for combo in itertools.product((0, 1), repeat=len(free)):
                bits = list(a.bits)
                for pos, val in zip(free, combo):
                    bits[pos] = val
                members.append(Judgment(tuple(bits), self.agenda))
            return frozenset(members)
        d = self.path_distance(a, b)
        return frozenset(
            c
            for c in self.vertices
            if self.path_distance(a, c) + self.path_distance(c, b) == d
        )

    def convex_hull(
        self, s: Iterable[Judgment], mode: HullMode = HullMode.INTERVAL_UNION
    ) -> frozenset[Judgment]:
        """Hull of a nonempty vertex set under the chosen reading."""
        current = frozenset(s)
        if not current:
            raise ValueError("hull of an empty set")
        for j in current:
            self._vertex(j)
        while True:
            expanded = set(current)
            for a, b in itertools.combinations(sorted(current), 2):
                expanded |= self.interval(a, b)
            expanded = frozenset(expanded)
            if mode is HullMode.INTERVAL_UNION or expanded == current:
                return expanded
            current = expanded

    # -- eccentricity family ----------------------------------------------

    def eccentricity(self, s: Iterable[Judgment], j: Judgment) -> int:
        members = self._checked_set(s)
        if j not in members:
            raise ValueError(f"{j} is not a member of the queried set")
        return max(self.path_distance(j, other) for other in members)

    def diameter(self, s: Iterable[Judgment]) -> int:
        members = self._checked_set(s)
        return max(self.eccentricity(members, j) for j in members)

    def peripherals(self, s: Iterable[Judgment]) -> frozenset[Judgment]:
        members = self._checked_set(s)
        widest = self.diameter(members)
        return frozenset(
            j for j in members if self.eccentricity(members, j) == widest
        )

    def antipodal_pairs(
        self, s: Iterable[Judgment]
    ) -> frozenset[tuple[Judgment, Judgment]]:
        """Unordered pairs of distinct members realising the diameter;
        empty when the set is a singleton."""
        members = self._checked_set(s)
        widest = self.diameter(members)
        return frozenset(
            (a, b)
            for a, b in itertools.combinations(sorted(members), 2)
            if self.path_distance(a, b) == widest
        )

    def _checked_set(self, s: Iterable[Judgment]) -> frozenset[Judgment]:
        members = frozenset(s)
        if not members:
            raise ValueError("empty judgment set")
        for j in members:
            self._vertex(j)
        return members

    # -- induced subgraphs and cycles --------------------------------------

    def induced_adjacency(
        self, s: Iterable[Judgment]
    ) -> dict[Judgment, frozenset[Judgment]]:
        """Adjacency of the subgraph induced by ``s``."""
        members = self._checked_set(s)
        if self.kind is GraphKind.COMPLETE:
            return {v: frozenset(members - {v}) for v in members}
        if self.kind is GraphKind.HAMMING:
            return {
                v: frozenset(w for w in self.neighbors(v) if w in members)
                for v in members
            }
        return {
            v: frozenset(
                self.vertices[k]
                for k in self._adjacency[self._vertex(v)]
                if self.vertices[k] in members
            )
            for v in members
        }

    def iter_simple_cycles(
        self, s: Iterable[Judgment], max_length: int | None = None
    ) -> Iterator[tuple[Judgment, ...]]:
        """Yield each simple cycle of the ``s``-induced subgraph once.

        Cycles are canonicalised (fixed starting vertex and direction),
        so rotations and reflections are not repeated. ``max_length``
        prunes the search.
        """
        adj = self.induced_adjacency(s)
        order = {v: i for i, v in enumerate(sorted(adj))}
        cap = max_length if max_length is not None else len(adj)

        def extend(path: list[Judgment], on_path: set[Judgment]):
            root, last = path[0], path[-1]
            for nxt in sorted(adj[last]):
                if nxt == root and len(path) >= 3:
                    if order[path[1]] < order[path[-1]]:
                        yield tuple(path)
                elif (
                    order[nxt] > order[root]
                    and nxt not in on_path
                    and len(path) < cap
                ):
                    path.append(nxt)
                    on_path.add(nxt)
                    yield from extend(path, on_path)
                    on_path.discard(nxt)
                    path.pop()

        for root in sorted(adj):
            yield from extend([root], {root})

    def detect_cycles(
        self, s: Iterable[Judgment], max_count: int | None = None
    ) -> tuple[int, ...]:
        """Sorted lengths of the simple cycles in the induced subgraph,
        truncated after ``max_count`` cycles when set."""
        lengths = []
        for cycle in self.iter_simple_cycles(s):
            lengths.append(len(cycle))
            if max_count is not None and len(lengths) >= max_count:
                break
        return tuple(sorted(lengths))

    def has_k_cycle(self, s: Iterable[Judgment], k: int) -> bool:
        if k < 3:
            return False
        return any(
            len(cycle) == k for cycle in self.iter_simple_cycles(s, max_length=k)
        )

    def is_k_cycle(self, s: Iterable[Judgment], k: int) -> bool:
        """True when the induced subgraph is itself a single simple k-cycle."""
        members = self._checked_set(s)
        if len(members) != k or k < 3:
            return False
        adj = self.induced_adjacency(members)
        if any(len(nbrs) != 2 for nbrs in adj.values()):
            return False
        return len(self._components(adj)) == 1

    @staticmethod
    def _components(
        adj: dict[Judgment, frozenset[Judgment]]
    ) -> list[set[Judgment]]:
        seen: set[Judgment] = set()
        components = []
        for start in sorted(adj):
            if start in seen:
                continue
            queue, component = deque([start]), {start}
            seen.add(start)
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        component.add(w)
                        queue.append(w)
            components.append(component)
        return components

    def _distances_within(
        self, members: frozenset[Judgment], sources: Iterable[Judgment]
    ) -> dict[Judgment, dict[Judgment, int]]:
        """BFS distances inside the ``members``-induced subgraph."""
        adj = self.induced_adjacency(members)
        table = {}
        for source in sources:
            dist = {source: 0}
            queue = deque([source])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            table[source] = dist
        return table

    # -- gap-based connectedness -------------------------------------------

    def epsilon_connected(self, a: Judgment, b: Judgment, eps: int) -> bool:
        """Check the rational gaps along the interval between ``a`` and ``b``.

        Within the interval-induced subgraph, two rational judgments are
        consecutive when no third rational interval member sits metrically
        between them. The interval passes iff every consecutive pair is at
        induced distance at most ``eps``.
        """
        if eps < 1:
            raise ValueError("eps must be at least 1")
        for j in (a, b):
            if not self.is_rational(j):
                raise NotRationalError(f"{j} is not rational")
        if a == b:
            return True
        members = self.interval(a, b)
        rational = sorted(j for j in members if self.is_rational(j))
        table = self._distances_within(members, rational)
        for x, y in itertools.combinations(rational, 2):
            dxy = table[x].get(y)
            if dxy is None:
                return False

            def metrically_between(z: Judgment) -> bool:
                if z == x or z == y:
                    return False
                dxz, dzy = table[x].get(z), table[z].get(y)
                return dxz is not None and dzy is not None and dxz + dzy == dxy

            if not any(map(metrically_between, rational)) and dxy > eps:
                return False
        return True

    def profile_epsilon_connected(self, p: Profile, eps: int) -> bool:
        distinct = sorted(p.distinct())
        return all(
            self.epsilon_connected(a, b, eps)
            for a, b in itertools.combinations(distinct, 2)
        )

    # -- classification ------------------------------------------------------

    def classify_profile(
        self,
        p: Profile,
        mode: HullMode = HullMode.INTERVAL_UNION,
        max_cycles: int | None = 10_000,
    ) -> ProfileClassification:
        for j in p:
            if not self.is_rational(j):
                raise NotRationalError(f"profile entry {j} is not rational")
        hull = self.convex_hull(p.distinct(), mode)
        adj = self.induced_adjacency(hull)
        edge_count = sum(len(nbrs) for nbrs in adj.values()) // 2
        connected = len(self._components(adj)) == 1
        pairwise = [
            self.path_distance(p[i], p[j])
            for i, j in itertools.combinations(range(p.n), 2)
        ]
        return ProfileClassification(
            one_connected=self.profile_epsilon_connected(p, 1),
            equidistant=len(set(pairwise)) <= 1,
            class_a=connected and edge_count == len(hull) - 1,
            class_b=all(len(nbrs) <= 2 for nbrs in adj.values()),
            diameter=self.diameter(p.distinct()),
            hull_size=len(hull),
            hull_cycles=self.detect_cycles(hull, max_count=max_cycles),
        )

    # -- export ----------------------------------------------------------------

    def edges(self) -> Iterator[tuple[Judgment, Judgment]]:
        for v in self.vertices:
            for w in self.neighbors(v):
                if v.bits < w.bits:
                    yield (v, w)

    def adjacency_text(self) -> str:
        lines = []
        for v in self.vertices:
            nbrs = " ".join(str(w) for w in sorted(self.neighbors(v)))
            lines.append(f"{v}: {nbrs}")
        return "\n".join(lines) + "\n"

    def to_document(self) -> dict:
        return {
            "kind": self.kind.value,
            "issues": list(self.agenda.issues),
            "constraint": format_formula(self.gamma),
            "vertices": [
                {"bits": str(v), "rational": self._rational_flags[i]}
                for i, v in enumerate(self.vertices)
            ],
            "edges": [[str(a), str(b)] for a, b in self.edges()],
        }


def build_graph(
    kind: GraphKind,
    agenda: Agenda,
    gamma: Formula,
    max_issues: int = DEFAULT_MAX_ISSUES,
) -> AgendaGraph:
    """Construct an agenda graph; raises on contradictions and oversize agendas."""
    models = enumerate_models(agenda, gamma, max_issues)
    rational = frozenset(models)

    if kind is GraphKind.HAMMING:
        vertices = tuple(
            Judgment(bits, agenda)
            for bits in itertools.product((0, 1), repeat=len(agenda))
        )
        flags = tuple(v in rational for v in vertices)
        return AgendaGraph(kind, agenda, gamma, vertices, flags, None, None)

    if kind is GraphKind.COMPLETE:
        flags = (True,) * len(models)
        return AgendaGraph(kind, agenda, gamma, models, flags, None, None)

    adjacency = _model_adjacency(models, len(agenda))
    dist = _bfs_all_pairs(adjacency)
    graph = AgendaGraph(
        kind, agenda, gamma, models, (True,) * len(models), adjacency, dist
    )
    if any(d < 0 for row in dist for d in row):
        raise InternalInvariantError("model graph is not connected")
    return graph


def _model_adjacency(
    models: tuple[Judgment, ...], width: int
) -> tuple[frozenset[int], ...]:
    """Edges between rational judgments with no rational judgment between.

    Quadratic in pairs with a linear betweenness scan per pair; fine at
    enumeration scale, hopeless beyond it.
    """
    masks = [sum(bit << i for i, bit in enumerate(j.bits)) for j in models]
    full = (1 << width) - 1
    adjacency: list[set[int]] = [set() for _ in models]
    for a, b in itertools.combinations(range(len(models)), 2):
        agree = ~(masks[a] ^ masks[b]) & full
        inside = masks[a] & agree
        if not any(
            c != a and c != b and (masks[c] & agree) == inside
            for c in range(len(models))
        ):
            adjacency[a].add(b)
            adjacency[b].add(a)
    return tuple(frozenset(nbrs) for nbrs in adjacency)


def _bfs_all_pairs(
    adjacency: tuple[frozenset[int], ...]
) -> tuple[tuple[int, ...], ...]:
    table = []
    for source in range(len(adjacency)):
        dist = [-1] * len(adjacency)
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        table.append(tuple(dist))
    return tuple(table)
