"""Exact probabilistic profiles and binary belief sets.

Probabilities are world mass functions with ``Fraction`` entries, so the
certainty tests ``P(A) == 1`` and ``P(A) == 0`` are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterator, Sequence

from .core import Agenda, Issue, IssueSet, Universe, intersection
from .errors import InvalidProfile, LimitExceeded

DEFAULT_MAX_PROFILES = 200_000


@dataclass(frozen=True)
class MassFunction:
    universe: Universe
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        mass = tuple(Fraction(m) for m in self.mass)
        if len(mass) != self.universe.size:
            raise InvalidProfile(f"expected {self.universe.size} world masses, got {len(mass)}")
        if any(m < 0 for m in mass):
            raise InvalidProfile("world masses must be non-negative")
        if sum(mass) != 1:
            raise InvalidProfile(f"world masses sum to {sum(mass)}, not 1")
        object.__setattr__(self, "mass", mass)

    @classmethod
    def point(cls, universe: Universe, world: int) -> MassFunction:
        return cls(universe, tuple(Fraction(int(w == world)) for w in range(universe.size)))

    @classmethod
    def uniform(cls, universe: Universe) -> MassFunction:
        return cls(universe, (Fraction(1, universe.size),) * universe.size)


@dataclass(frozen=True)
class Profile:
    members: tuple[MassFunction, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise InvalidProfile("a profile needs at least one individual")
        if any(m.universe != members[0].universe for m in members):
            raise InvalidProfile("all mass functions must share one universe")
        object.__setattr__(self, "members", members)

    @property
    def n(self) -> int:
        return len(self.members)

    @property
    def universe(self) -> Universe:
        return self.members[0].universe

    def permuted(self, perm: Sequence[int]) -> Profile:
        """Profile whose individual ``i`` holds the beliefs of individual ``perm[i]`` (0-based)."""
        return Profile(tuple(self.members[j] for j in perm))

    def key(self) -> tuple:
        return tuple(m.mass for m in self.members)

    @classmethod
    def point_masses(cls, universe: Universe, worlds: Sequence[int]) -> Profile:
        return cls(tuple(MassFunction.point(universe, w) for w in worlds))


@dataclass(frozen=True)
class BinaryBelief:
    agenda: Agenda
    accepted: int = 0

    def as_issue_set(self) -> IssueSet:
        return IssueSet(self.agenda, self.accepted)

    def names(self) -> list[str]:
        return self.as_issue_set().names()

    def __contains__(self, i: int) -> bool:
        return bool(self.accepted >> i & 1)


def prob(p: MassFunction, a: Issue) -> Fraction:
    if a.universe != p.universe:
        raise InvalidProfile("issue and mass function live in different universes")
    members = a.members
    return sum((m for w, m in enumerate(p.mass) if members >> w & 1), Fraction(0))


def profile_vector(pr: Profile, a: Issue) -> tuple[Fraction, ...]:
    return tuple(prob(p, a) for p in pr.members)


def deductive_closure_violation(bel: BinaryBelief) -> int | None:
    """First issue entailed by the belief set but not accepted, if any."""
    inter = intersection(bel.as_issue_set())
    for i, issue in enumerate(bel.agenda.issues):
        if inter & ~issue.members == 0 and not bel.accepted >> i & 1:
            return i
    return None


def is_deductively_closed(bel: BinaryBelief) -> bool:
    return deductive_closure_violation(bel) is None


def is_consistent_belief(bel: BinaryBelief) -> bool:
    return intersection(bel.as_issue_set()) != 0


def completeness_violation(bel: BinaryBelief) -> tuple[int, int] | None:
    """First complement pair with neither member accepted."""
    for i, j in bel.agenda.pairs():
        if not (bel.accepted >> i & 1 or bel.accepted >> j & 1):
            return (i, j)
    return None


def is_complete_belief(bel: BinaryBelief) -> bool:
    return completeness_violation(bel) is None


def grid_mass_functions(universe: Universe, d: int) -> list[MassFunction]:
    """Mass functions with all masses in multiples of ``1/d``, lexicographic in the numerators."""

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    return [
        MassFunction(universe, tuple(Fraction(k, d) for k in numerators))
        for numerators in compositions(d, universe.size)
    ]


def grid_profile_count(universe_size: int, n: int, d: int) -> int:
    return comb(d + universe_size - 1, universe_size - 1) ** n


def enumerate_grid_profiles(
    universe: Universe, n: int, d: int, limit: int = DEFAULT_MAX_PROFILES
) -> Iterator[Profile]:
    if n < 1 or d < 1:
        raise InvalidProfile("need n >= 1 and d >= 1")
    count = grid_profile_count(universe.size, n, d)
    if count > limit:
        raise LimitExceeded(f"{count} grid profiles exceed the cap of {limit}")
    singles = grid_mass_functions(universe, d)
    return (Profile(combo) for combo in product(singles, repeat=n))
