"""Exhaustive small-instance verification of the agenda lemmas.

Everything here is brute force and deliberately independent of the
optimised paths it cross-checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .core import Agenda, IssueSet, Universe, is_nontrivial_algebra, make_agenda
from .entailment import (
    conditionally_entails,
    conditionally_entails_direct,
    entailment_graph,
    witnesses_entailment,
)
from .errors import LimitExceeded
from .mis import is_minimally_inconsistent, minimally_inconsistent_subsets, negate_subset
from .properties import (
    find_m_set,
    h0_set,
    is_blocked,
    is_even_negatable,
    is_negation_connected,
    is_non_simple,
    is_pair_negatable,
    is_path_connected,
    median_points,
)

MAX_ENUMERATION_WORLDS = 4


def complement_pairs(universe_size: int) -> list[int]:
    """One representative per complement pair: the contingent sets missing the last world."""
    full = (1 << universe_size) - 1
    top = 1 << (universe_size - 1)
    return [m for m in range(1, full) if not m & top]


def enumerate_agendas(universe_size: int, max_pairs: int) -> Iterator[Agenda]:
    """Every complement-closed agenda made of 1..max_pairs complement pairs."""
    if not 2 <= universe_size <= MAX_ENUMERATION_WORLDS:
        raise LimitExceeded(f"agenda enumeration supports 2..{MAX_ENUMERATION_WORLDS} worlds")
    reps = complement_pairs(universe_size)
    if max_pairs > len(reps):
        max_pairs = len(reps)
    universe = Universe(universe_size)
    for k in range(1, max_pairs + 1):
        for chosen in combinations(reps, k):
            yield make_agenda(universe, chosen, auto_close=True)


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def enumerate_algebras(universe_size: int) -> Iterator[list[int]]:
    """All subalgebras of the power set, each as the sorted list of its member masks.

    A finite algebra is the set of unions of blocks of a partition of the worlds.
    """
    for blocks in _set_partitions(list(range(universe_size))):
        masks = [sum(1 << w for w in b) for b in blocks]
        family = set()
        for r in range(len(masks) + 1):
            for combo in combinations(masks, r):
                family.add(sum(combo))
        yield sorted(family)


def brute_force_mis(agenda: Agenda) -> list[IssueSet]:
    """Filter all 2^n selections by the definition of minimal inconsistency."""
    found = [IssueSet(agenda, sel) for sel in range(1 << len(agenda))
             if is_minimally_inconsistent(IssueSet(agenda, sel))]
    return sorted(found, key=IssueSet.sort_key)


@dataclass
class CheckTally:
    instances: int = 0
    counterexamples: list = field(default_factory=list)

    def record(self, ok: bool, witness=None):
        self.instances += 1
        if not ok:
            self.counterexamples.append(witness)


@dataclass
class VerificationRun:
    worlds: tuple[int, ...]
    max_pairs: int
    agendas: int = 0
    algebras: int = 0
    checks: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(not t.counterexamples for t in self.checks.values())

    def tally(self, name: str) -> CheckTally:
        return self.checks.setdefault(name, CheckTally())


def _agenda_label(agenda: Agenda) -> str:
    return "[" + ", ".join(agenda.universe.format(i.members) for i in agenda.issues) + "]"


def check_agenda(agenda: Agenda, run: VerificationRun, entailment_oracle: bool = True) -> None:
    label = _agenda_label(agenda)
    mis = minimally_inconsistent_subsets(agenda)
    graph = entailment_graph(agenda)
    n = len(agenda)

    run.tally("mis-brute-force").record(list(mis.sets) == brute_force_mis(agenda), label)

    if entailment_oracle:
        t = run.tally("entailment-oracle")
        for a in range(n):
            for b in range(n):
                fast = conditionally_entails(a, b, agenda)
                slow = conditionally_entails_direct(a, b, agenda)
                t.record((fast is None) == (slow is None), (label, a, b))

    t = run.tally("contrapositive")
    for (a, b), y in graph.witnesses.items():
        ok = witnesses_entailment(a, b, y) and witnesses_entailment(
            agenda.complement_index(b), agenda.complement_index(a), y)
        t.record(ok, (label, a, b, y.indices()))

    en = is_even_negatable(mis)
    pn = is_pair_negatable(mis)
    pc = is_path_connected(graph)
    ns = is_non_simple(mis)
    nc = is_negation_connected(graph)
    blocked = is_blocked(graph)
    h0 = h0_set(graph)

    run.tally("en-iff-pair-negatable").record((en is None) == (pn is None), label)
    run.tally("pc-implies-ns").record(not pc or ns is not None, label)
    run.tally("blocked-iff-no-median").record(blocked == (median_points(mis) == 0), label)
    run.tally("chain-pc-nc-blocked").record((not pc or nc) and (not nc or blocked), label)
    run.tally("nc-iff-h0-full").record(nc == (h0.selection == agenda.all_mask), label)

    if en is None:
        t = run.tally("not-en-even-negations-minimal")
        for y in mis:
            idx = y.indices()
            for k in range(0, len(idx) + 1, 2):
                for combo in combinations(idx, k):
                    z = agenda.issue_set(combo)
                    t.record(is_minimally_inconsistent(negate_subset(y, z)),
                             (label, y.indices(), list(combo)))

    if not nc:
        t = run.tally("not-nc-m-set")
        result = find_m_set(agenda, graph, mis)
        m = result.value
        ok = m is not None and len(m) > 0 and m.selection & h0.selection == 0
        if ok:
            for y in mis:
                meet = len(IssueSet(agenda, y.selection & m.selection))
                ok &= meet <= 1 and (meet == 0 or not y.selection & h0.selection)
            for i in range(n):
                if not h0.selection >> i & 1:
                    ok &= (i in m) != (agenda.complement_index(i) in m)
        t.record(ok, (label, result.reason))


def check_algebra(universe: Universe, family: list[int], run: VerificationRun) -> None:
    contingent = [m for m in family if m not in (0, universe.full)]
    if len(contingent) < 3:
        return
    t = run.tally("algebra-pc-en")
    nontrivial = is_nontrivial_algebra(universe, family)
    agenda = make_agenda(universe, contingent)
    pc = is_path_connected(entailment_graph(agenda))
    en = is_even_negatable(minimally_inconsistent_subsets(agenda)) is not None
    t.record(nontrivial and pc and en, (universe.size, [universe.format(m) for m in contingent]))


def verify_lemmas(
    worlds=(3, 4), max_pairs: int = 3, algebras: bool = True, entailment_oracle: bool = True
) -> VerificationRun:
    start = time.perf_counter()
    run = VerificationRun(tuple(worlds), max_pairs)
    for size in worlds:
        for agenda in enumerate_agendas(size, max_pairs):
            run.agendas += 1
            check_agenda(agenda, run, entailment_oracle)
        if algebras:
            universe = Universe(size)
            for family in enumerate_algebras(size):
                if len(family) - 2 >= 3:
                    run.algebras += 1
                check_algebra(universe, family, run)
    run.seconds = time.perf_counter() - start
    return run

