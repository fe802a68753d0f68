"""Minimally inconsistent subsets of an agenda and subset negation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .core import Agenda, IssueSet, intersection, popcount
from .errors import LimitExceeded, NotASubset

DEFAULT_MAX_ISSUES = 20


@dataclass(frozen=True)
class MisFamily:
    """All minimally inconsistent subsets of ``agenda``, sorted by (size, indices)."""

    agenda: Agenda
    sets: tuple[IssueSet, ...]

    def __iter__(self) -> Iterator[IssueSet]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, k: int) -> IssueSet:
        return self.sets[k]

    def containing(self, *indices: int) -> list[IssueSet]:
        want = 0
        for i in indices:
            want |= 1 << i
        return [s for s in self.sets if s.selection & want == want]


def is_minimally_inconsistent(s: IssueSet) -> bool:
    if intersection(s) != 0:
        return False
    return all(intersection(s.without(i)) != 0 for i in s)


def minimally_inconsistent_subsets(
    agenda: Agenda, max_size: int | None = None, limit: int | None = None
) -> MisFamily:
    """Enumerate every minimally inconsistent subset with at most ``max_size`` issues.

    Candidates are grown level by level from consistent sets only, so no
    superset of an inconsistent set is ever examined.  Minimality of each
    inconsistent candidate is confirmed with the drop-one test.
    """
    if limit is None:
        limit = DEFAULT_MAX_ISSUES
    if len(agenda) > limit:
        raise LimitExceeded(
            f"agenda has {len(agenda)} issues; exhaustive enumeration is capped at {limit}"
        )
    return _enumerate(agenda, max_size)


@lru_cache(maxsize=256)
def _enumerate(agenda: Agenda, max_size: int | None) -> MisFamily:
    members = [issue.members for issue in agenda.issues]
    n = len(members)
    top = n if max_size is None else min(max_size, n)
    found: list[int] = []
    # consistent selections of the current size: (selection, highest index, intersection)
    level = [(0, -1, agenda.universe.full)]
    size = 0
    while level and size < top:
        size += 1
        nxt = []
        for sel, last, inter in level:
            for j in range(last + 1, n):
                meet = inter & members[j]
                grown = sel | 1 << j
                if meet:
                    nxt.append((grown, j, meet))
                elif _drop_one_consistent(grown, members, agenda.universe.full):
                    found.append(grown)
        level = nxt
    sets = tuple(
        IssueSet(agenda, sel)
        for sel in sorted(found, key=lambda s: (popcount(s), _index_tuple(s)))
    )
    return MisFamily(agenda, sets)


def _index_tuple(sel: int) -> tuple[int, ...]:
    out = []
    i = 0
    while sel:
        if sel & 1:
            out.append(i)
        sel >>= 1
        i += 1
    return tuple(out)


def _drop_one_consistent(sel: int, members: list[int], full: int) -> bool:
    for i in _index_tuple(sel):
        rest = sel & ~(1 << i)
        inter = full
        for j in _index_tuple(rest):
            inter &= members[j]
        if not inter:
            return False
    return True


def negate_subset(y: IssueSet, z: IssueSet) -> IssueSet:
    """Replace every member of ``z`` inside ``y`` by its complement."""
    if z.agenda != y.agenda:
        raise NotASubset("issue sets belong to different agendas")
    if z.selection & ~y.selection:
        raise NotASubset(f"{z} is not a subset of {y}")
    agenda = y.agenda
    sel = y.selection & ~z.selection
    for i in z:
        sel |= 1 << agenda.complement_index(i)
    return IssueSet(agenda, sel)
