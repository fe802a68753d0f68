"""Conditional entailment between agenda issues and its transitive closure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Union

from .core import Agenda, Issue, IssueSet, intersection
from .errors import LimitExceeded
from .mis import minimally_inconsistent_subsets

DIRECT_ORACLE_MAX_ISSUES = 14

IssueRef = Union[Issue, int, str]


def conditionally_entails(a: IssueRef, b: IssueRef, agenda: Agenda) -> IssueSet | None:
    """Witness ``Y`` for ``a |=* b``, or None.

    ``a |=* b`` holds iff some minimally inconsistent set contains both ``a``
    and the complement of ``b``; ``Y`` is that set minus those two issues.
    ``b`` equal to the complement of ``a`` never holds.
    """
    i = agenda.index_of(a)
    j = agenda.index_of(b)
    nj = agenda.complement_index(j)
    if nj == i:
        return None
    for y in minimally_inconsistent_subsets(agenda).containing(i, nj):
        return IssueSet(agenda, y.selection & ~(1 << i | 1 << nj))
    return None


def witnesses_entailment(a: int, b: int, y: IssueSet) -> bool:
    """Literal check of the three defining clauses of ``a |=*_Y b``."""
    agenda = y.agenda
    nb = agenda.complement_index(b)
    with_a = intersection(y.with_(a))
    return (
        with_a != 0
        and intersection(y.with_(nb)) != 0
        and with_a & ~agenda.members(b) == 0
    )


def conditionally_entails_direct(
    a: IssueRef, b: IssueRef, agenda: Agenda, limit: int = DIRECT_ORACLE_MAX_ISSUES
) -> IssueSet | None:
    """Exhaustive search over every ``Y`` of the agenda; first hit in (size, index) order."""
    if len(agenda) > limit:
        raise LimitExceeded(f"direct entailment search is capped at {limit} issues")
    i = agenda.index_of(a)
    j = agenda.index_of(b)
    n = len(agenda)
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            sel = 0
            for k in combo:
                sel |= 1 << k
            y = IssueSet(agenda, sel)
            if witnesses_entailment(i, j, y):
                return y
    return None


@dataclass(frozen=True)
class EntailmentGraph:
    """Direct conditional entailment and its transitive closure.

    ``direct[i]`` and ``closure[i]`` are bit masks of the issues reachable from
    issue ``i`` in one step and in any number of steps respectively.
    """

    agenda: Agenda
    direct: tuple[int, ...]
    closure: tuple[int, ...]
    witnesses: dict

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.direct[a] >> b & 1)

    def reaches(self, a: int, b: int) -> bool:
        return bool(self.closure[a] >> b & 1)

    def edges(self) -> list[tuple[int, int]]:
        n = len(self.agenda)
        return [(a, b) for a in range(n) for b in range(n) if self.has_edge(a, b)]


def transitive_closure(rows: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Warshall propagation over bit-mask adjacency rows."""
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        reach_k = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= reach_k
    return tuple(rows)


def entailment_graph(agenda: Agenda) -> EntailmentGraph:
    return _graph(agenda)


@lru_cache(maxsize=256)
def _graph(agenda: Agenda) -> EntailmentGraph:
    n = len(agenda)
    direct = [0] * n
    witnesses = {}
    # MIS are visited in sorted order, so each edge keeps the witness that
    # conditionally_entails would return.
    for y in minimally_inconsistent_subsets(agenda):
        idx = y.indices()
        for a in idx:
            for x in idx:
                if x == a:
                    continue
                b = agenda.complement_index(x)
                if (a, b) not in witnesses:
                    witnesses[(a, b)] = IssueSet(agenda, y.selection & ~(1 << a | 1 << x))
                    direct[a] |= 1 << b
    return EntailmentGraph(agenda, tuple(direct), transitive_closure(direct), witnesses)


@dataclass(frozen=True)
class Hop:
    source: int
    target: int
    witness: IssueSet


def path_witness(a: IssueRef, b: IssueRef, graph: EntailmentGraph) -> list[Hop] | None:
    """Shortest chain of direct entailments from ``a`` to ``b``.

    Breadth-first search expanding neighbours in increasing index order, so
    ties go to the lowest issue index.  ``a == b`` yields the one-hop self
    loop with the empty witness.
    """
    agenda = graph.agenda
    src = agenda.index_of(a)
    dst = agenda.index_of(b)
    if src == dst:
        return [Hop(src, src, graph.witnesses[(src, src)])]
    if not graph.reaches(src, dst):
        return None
    n = len(agenda)
    parent = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in range(n):
            if v in parent or not graph.has_edge(u, v):
                continue
            parent[v] = u
            if v == dst:
                hops = []
                while parent[v] is not None:
                    u = parent[v]
                    hops.append(Hop(u, v, graph.witnesses[(u, v)]))
                    v = u
                return hops[::-1]
            queue.append(v)
    return None
