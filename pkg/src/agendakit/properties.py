"""Agenda conditions: path-connectedness, even-negatability, negation-connectedness,
blockedness, median points, and the supporting witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator

from .core import Agenda, IssueSet, is_consistent
from .entailment import EntailmentGraph, entailment_graph
from .errors import LimitExceeded
from .mis import MisFamily, minimally_inconsistent_subsets, negate_subset

DEFAULT_MAX_PAIRS_M_SET = 16
DEFAULT_MAX_PAIRS_PARTITION = 8


@dataclass(frozen=True)
class Negation:
    """A minimally inconsistent ``y`` and the subset ``z`` whose negation makes it consistent."""

    y: IssueSet
    z: IssueSet
    negated: IssueSet


@dataclass(frozen=True)
class Search:
    """Outcome of a witness search: ``value`` when found, else a ``reason``."""

    value: Any = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.value is not None


def is_path_connected(graph: EntailmentGraph) -> bool:
    everything = graph.agenda.all_mask
    return all(row == everything for row in graph.closure)


def _subsets_of_size(y: IssueSet, k: int) -> Iterator[IssueSet]:
    for combo in combinations(y.indices(), k):
        sel = 0
        for i in combo:
            sel |= 1 << i
        yield IssueSet(y.agenda, sel)


def _negatable(mis: MisFamily, sizes) -> Negation | None:
    for y in mis:
        for k in sizes(len(y)):
            for z in _subsets_of_size(y, k):
                negated = negate_subset(y, z)
                if is_consistent(negated):
                    return Negation(y, z, negated)
    return None


def is_even_negatable(mis: MisFamily) -> Negation | None:
    return _negatable(mis, lambda m: range(2, m + 1, 2))


def is_pair_negatable(mis: MisFamily) -> Negation | None:
    return _negatable(mis, lambda m: (2,) if m >= 2 else ())


def is_non_simple(mis: MisFamily) -> IssueSet | None:
    for y in mis:
        if len(y) >= 3:
            return y
    return None


def is_negation_connected(graph: EntailmentGraph) -> bool:
    agenda = graph.agenda
    return all(graph.reaches(i, agenda.complement_index(i)) for i in range(len(agenda)))


def h0_set(graph: EntailmentGraph) -> IssueSet:
    """Issues that reach their complement and are reached back from it."""
    agenda = graph.agenda
    sel = 0
    for i in range(len(agenda)):
        c = agenda.complement_index(i)
        if graph.reaches(i, c) and graph.reaches(c, i):
            sel |= 1 << i
    return IssueSet(agenda, sel)


def is_blocked(graph: EntailmentGraph) -> bool:
    return len(h0_set(graph)) > 0


def median_points(mis: MisFamily) -> int:
    """Mask of worlds lying in at most one member of every minimally inconsistent set."""
    agenda = mis.agenda
    result = 0
    for w in range(agenda.universe.size):
        bit = 1 << w
        if all(sum(1 for i in y if agenda.members(i) & bit) <= 1 for y in mis):
            result |= bit
    return result


def find_m_set(
    agenda: Agenda,
    graph: EntailmentGraph | None = None,
    mis: MisFamily | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS_M_SET,
) -> Search:
    """Search for a set that takes one issue from every complement pair outside H0
    and meets each minimally inconsistent set at most once (never, if that set
    meets H0).

    Choices are tried in binary-counting order over the pairs outside H0,
    bit ``k`` set meaning the higher-indexed member of pair ``k``.
    """
    graph = graph or entailment_graph(agenda)
    mis = mis or minimally_inconsistent_subsets(agenda)
    if is_negation_connected(graph):
        return Search(reason="agenda is negation-connected")
    h0 = h0_set(graph).selection
    pairs = [(i, j) for i, j in agenda.pairs() if not h0 >> i & 1]
    if len(pairs) > max_pairs:
        raise LimitExceeded(f"{len(pairs)} complement pairs outside H0; cap is {max_pairs}")
    constraints = [(y.selection, 0 if y.selection & h0 else 1) for y in mis]
    for choice in range(1 << len(pairs)):
        sel = 0
        for k, (i, j) in enumerate(pairs):
            sel |= 1 << (j if choice >> k & 1 else i)
        if all(bin(ysel & sel).count("1") <= cap for ysel, cap in constraints):
            return Search(IssueSet(agenda, sel))
    return Search(reason="no admissible set found (contradicts the existence guarantee)")


def _set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All partitions of range(n) as restricted growth strings, fewest blocks first."""

    def grow(prefix: list[int], blocks: int, target: int):
        k = len(prefix)
        if k == n:
            if blocks == target:
                yield prefix
            return
        if blocks + (n - k) < target:
            return
        for b in range(min(blocks + 1, target)):
            yield from grow(prefix + [b], max(blocks, b + 1), target)

    for target in range(1, n + 1):
        for rgs in grow([], 0, target):
            parts = [[] for _ in range(target)]
            for item, b in enumerate(rgs):
                parts[b].append(item)
            yield parts


def partition_into_pc_subagendas(
    agenda: Agenda,
    graph: EntailmentGraph | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS_PARTITION,
) -> Search:
    """Split a negation-connected agenda into complement-closed parts that are each
    path-connected with respect to their own entailment structure."""
    graph = graph or entailment_graph(agenda)
    if not is_negation_connected(graph):
        return Search(reason="agenda is not negation-connected")
    pairs = agenda.pairs()
    if len(pairs) > max_pairs:
        raise LimitExceeded(f"{len(pairs)} complement pairs; partition search is capped at {max_pairs}")
    cache: dict[tuple[int, ...], bool] = {}

    def pc(block: tuple[int, ...]) -> bool:
        if block not in cache:
            indices = sorted(x for k in block for x in pairs[k])
            sub = agenda.restrict(indices)
            cache[block] = is_path_connected(entailment_graph(sub))
        return cache[block]

    for parts in _set_partitions(len(pairs)):
        if all(pc(tuple(p)) for p in parts):
            return Search([
                agenda.restrict(sorted(x for k in p for x in pairs[k])) for p in parts
            ])
    return Search(reason="no partition into path-connected subagendas")


@dataclass(frozen=True)
class PropertyFlags:
    agenda: Agenda
    path_connected: bool
    even_negatable: bool
    pair_negatable: bool
    non_simple: bool
    negation_connected: bool
    blocked: bool
    h0: IssueSet
    median_points: int
    witnesses: dict = field(default_factory=dict)


def analyze(agenda: Agenda) -> PropertyFlags:
    mis = minimally_inconsistent_subsets(agenda)
    graph = entailment_graph(agenda)
    en = is_even_negatable(mis)
    pn = is_pair_negatable(mis)
    ns = is_non_simple(mis)
    nc = is_negation_connected(graph)
    h0 = h0_set(graph)
    medians = median_points(mis)
    witnesses: dict[str, Any] = {"mis": mis}
    if en:
        witnesses["even_negatable"] = en
    if pn:
        witnesses["pair_negatable"] = pn
    if ns:
        witnesses["non_simple"] = ns
    if not nc:
        bad = next(i for i in range(len(agenda))
                   if not graph.reaches(i, agenda.complement_index(i)))
        witnesses["not_negation_connected"] = bad
        m_set = find_m_set(agenda, graph, mis)
        if m_set:
            witnesses["m_set"] = m_set.value
    pc = is_path_connected(graph)
    if not pc:
        n = len(agenda)
        witnesses["not_path_connected"] = next(
            (a, b) for a in range(n) for b in range(n) if not graph.reaches(a, b)
        )
    return PropertyFlags(
        agenda=agenda,
        path_connected=pc,
        even_negatable=en is not None,
        pair_negatable=pn is not None,
        non_simple=ns is not None,
        negation_connected=nc,
        blocked=len(h0) > 0,
        h0=h0,
        median_points=medians,
        witnesses=witnesses,
    )
