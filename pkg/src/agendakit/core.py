"""Worlds, issues and agendas.

World subsets are plain ``int`` bit masks: world ``i`` belongs to the
subset iff bit ``i`` is set.  Selections of agenda issues (``IssueSet``)
use the same encoding over issue indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    EmptyAgenda,
    InvalidAgenda,
    IssueNotInAgenda,
    NonContingentIssue,
    NotComplementClosed,
)

log = logging.getLogger(__name__)

MAX_WORLDS = 32

WorldSet = Union[int, Iterable[int]]


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def to_mask(worlds: WorldSet) -> int:
    """Convert an iterable of world indices to a mask; ints pass through."""
    if isinstance(worlds, int):
        return worlds
    mask = 0
    for w in worlds:
        if w < 0:
            raise InvalidAgenda(f"negative world index {w}")
        mask |= 1 << w
    return mask


@dataclass(frozen=True)
class Universe:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.size <= MAX_WORLDS:
            raise InvalidAgenda(f"universe size must be in 1..{MAX_WORLDS}, got {self.size}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise InvalidAgenda("number of world labels differs from universe size")
            if len(set(labels)) != len(labels):
                raise InvalidAgenda("world labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def label(self, w: int) -> str:
        return self.labels[w] if self.labels else f"w{w}"

    def world_index(self, ref: Union[int, str]) -> int:
        if isinstance(ref, int):
            if 0 <= ref < self.size:
                return ref
        elif self.labels and ref in self.labels:
            return self.labels.index(ref)
        raise InvalidAgenda(f"unknown world {ref!r}")

    def worlds(self, mask: int) -> list[int]:
        return list(bits(mask))

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.label(w) for w in bits(mask)) + "}"

    def check_subset(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full:
            raise InvalidAgenda(f"world set {mask:#b} is not a subset of a {self.size}-world universe")
        return mask


@dataclass(frozen=True)
class Issue:
    universe: Universe
    members: int

    def __post_init__(self):
        self.universe.check_subset(self.members)
        if self.members == 0 or self.members == self.universe.full:
            raise NonContingentIssue(
                f"non-contingent issue {self.universe.format(self.members)}"
            )

    def complement(self) -> Issue:
        return Issue(self.universe, self.universe.full & ~self.members)

    def __contains__(self, world: int) -> bool:
        return bool(self.members >> world & 1)

    def worlds(self) -> list[int]:
        return list(bits(self.members))

    def __str__(self) -> str:
        return self.universe.format(self.members)


def negated_name(name: str) -> str:
    """Name for the complement of an issue called ``name``."""
    if name.startswith("~"):
        inner = name[1:]
        if inner.startswith("(") and inner.endswith(")") and _balanced(inner[1:-1]):
            return inner[1:-1]
        return inner
    if name.isidentifier() or (name.startswith("(") and name.endswith(")") and _balanced(name[1:-1])):
        return "~" + name
    if name.startswith("{"):
        return "~" + name
    return f"~({name})"


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


@dataclass(frozen=True)
class Agenda:
    """A complement-closed, duplicate-free, non-empty list of contingent issues."""

    universe: Universe
    issues: tuple[Issue, ...]
    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _complement: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        issues = tuple(self.issues)
        names = tuple(self.names)
        object.__setattr__(self, "issues", issues)
        object.__setattr__(self, "names", names)
        if not issues:
            raise EmptyAgenda("agenda must contain at least one issue")
        if len(names) != len(issues):
            raise InvalidAgenda("one name per issue required")
        if len(set(names)) != len(names):
            raise InvalidAgenda("issue names must be unique")
        index = {}
        for i, issue in enumerate(issues):
            if issue.universe != self.universe:
                raise InvalidAgenda("all issues must live in the agenda's universe")
            if issue.members in index:
                raise InvalidAgenda(f"duplicate issue {issue}")
            index[issue.members] = i
        full = self.universe.full
        comp = []
        for issue in issues:
            j = index.get(full & ~issue.members)
            if j is None:
                raise NotComplementClosed(f"complement of {issue} is missing")
            comp.append(j)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_complement", tuple(comp))

    def __len__(self) -> int:
        return len(self.issues)

    def __iter__(self) -> Iterator[Issue]:
        return iter(self.issues)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.issues)) - 1

    def complement_index(self, i: int) -> int:
        return self._complement[i]

    def pairs(self) -> list[tuple[int, int]]:
        """Complement pairs ``(i, j)`` with ``i < j``, ordered by ``i``."""
        return [(i, j) for i, j in enumerate(self._complement) if i < j]

    def index_of(self, ref: Union[Issue, int, str]) -> int:
        """Resolve an issue, a name or a 0-based index to an issue index.

        Names take precedence over indices when a string is both.
        """
        if isinstance(ref, Issue):
            if ref.universe == self.universe and ref.members in self._index:
                return self._index[ref.members]
            raise IssueNotInAgenda(str(ref))
        if isinstance(ref, int):
            if 0 <= ref < len(self.issues):
                return ref
            raise IssueNotInAgenda(f"issue index {ref} out of range")
        if ref in self.names:
            if ref.isdigit() and int(ref) < len(self.issues) and self.names[int(ref)] != ref:
                log.warning("%r matches both an issue name and an index; using the name", ref)
            return self.names.index(ref)
        if ref.isdigit():
            return self.index_of(int(ref))
        raise IssueNotInAgenda(f"no issue named {ref!r}")

    def members(self, i: int) -> int:
        return self.issues[i].members

    def issue_set(self, refs: Iterable[Union[Issue, int, str]] = ()) -> IssueSet:
        sel = 0
        for r in refs:
            sel |= 1 << self.index_of(r)
        return IssueSet(self, sel)

    def format_issue(self, i: int) -> str:
        return self.names[i]

    def restrict(self, indices: Sequence[int]) -> Agenda:
        """Sub-agenda on the given issue indices (must be complement closed)."""
        return Agenda(
            self.universe,
            tuple(self.issues[i] for i in indices),
            tuple(self.names[i] for i in indices),
        )


@dataclass(frozen=True)
class IssueSet:
    """A selection of agenda issues, stored as a bit mask over issue indices."""

    agenda: Agenda
    selection: int = 0

    def __post_init__(self):
        if self.selection < 0 or self.selection & ~self.agenda.all_mask:
            raise IssueNotInAgenda(f"selection {self.selection:#b} has invalid issue indices")

    def indices(self) -> list[int]:
        return list(bits(self.selection))

    def __iter__(self) -> Iterator[int]:
        return bits(self.selection)

    def __len__(self) -> int:
        return popcount(self.selection)

    def __contains__(self, i: int) -> bool:
        return bool(self.selection >> i & 1)

    def issues(self) -> list[Issue]:
        return [self.agenda.issues[i] for i in self]

    def names(self) -> list[str]:
        return [self.agenda.names[i] for i in self]

    def sort_key(self) -> tuple:
        return (len(self), tuple(self.indices()))

    def with_(self, i: int) -> IssueSet:
        return IssueSet(self.agenda, self.selection | 1 << i)

    def without(self, i: int) -> IssueSet:
        return IssueSet(self.agenda, self.selection & ~(1 << i))

    def __str__(self) -> str:
        return "{" + ", ".join(self.names()) + "}"


def make_agenda(
    universe: Universe,
    member_sets: Iterable[WorldSet],
    auto_close: bool = False,
    names: Sequence[str | None] | None = None,
) -> Agenda:
    """Build a validated agenda from world subsets.

    Duplicates are dropped (first occurrence wins).  With ``auto_close`` the
    complement of each issue is inserted right after it when absent from the
    input; otherwise a missing complement raises ``NotComplementClosed``.
    Unnamed issues get their world set as name, complements get ``~name``.
    """
    masks = [universe.check_subset(to_mask(s)) for s in member_sets]
    if names is None:
        names = [None] * len(masks)
    if len(names) != len(masks):
        raise InvalidAgenda("names and member sets differ in length")
    if not masks:
        raise EmptyAgenda("agenda must contain at least one issue")
    full = universe.full
    for m in masks:
        if m == 0 or m == full:
            raise NonContingentIssue(f"non-contingent issue {universe.format(m)}")

    given = {}
    for m, nm in zip(masks, names):
        given.setdefault(m, nm)
    order: list[int] = []
    seen = set()
    for m in masks:
        if m in seen:
            continue
        order.append(m)
        seen.add(m)
        c = full & ~m
        if auto_close and c not in seen and c not in given:
            order.append(c)
            seen.add(c)
    if not auto_close:
        for m in order:
            if full & ~m not in seen:
                raise NotComplementClosed(f"complement of {universe.format(m)} is missing")

    final_names = []
    for m in order:
        nm = given.get(m)
        if nm is None:
            base = given.get(full & ~m)
            nm = negated_name(base) if base is not None else universe.format(m)
        final_names.append(nm)
    return Agenda(universe, tuple(Issue(universe, m) for m in order), tuple(final_names))


def intersection(s: IssueSet) -> int:
    """Intersection of the selected issues; the empty selection gives the universe."""
    agenda = s.agenda
    result = agenda.universe.full
    for i in s:
        result &= agenda.issues[i].members
    return result


def is_consistent(s: IssueSet) -> bool:
    return intersection(s) != 0


def entails(s: IssueSet, b: Union[Issue, int, str]) -> bool:
    if isinstance(b, Issue):
        target = b.members
    else:
        target = s.agenda.members(s.agenda.index_of(b))
    return intersection(s) & ~target == 0


def algebra_closure(universe: Universe, member_sets: Iterable[WorldSet]) -> list[int]:
    """Smallest complement- and intersection-closed family containing the input, 0 and W."""
    full = universe.full
    family = {0, full} | {universe.check_subset(to_mask(s)) for s in member_sets}
    while True:
        grown = set(family)
        grown.update(full & ~m for m in family)
        grown.update(a & b for a in family for b in family)
        if grown == family:
            return sorted(family)
        family = grown


def is_nontrivial_algebra(universe: Universe, member_sets: Iterable[WorldSet]) -> bool:
    """True iff the family is an algebra with at least three contingent elements."""
    full = universe.full
    family = {universe.check_subset(to_mask(s)) for s in member_sets}
    if 0 not in family or full not in family:
        return False
    for m in family:
        if full & ~m not in family:
            return False
        for other in family:
            if m & other not in family:
                return False
    return len(family) - 2 >= 3
