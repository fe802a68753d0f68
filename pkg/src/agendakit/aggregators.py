"""Binarizing aggregators and a grid-based axiom harness.

Axioms quantify over every profile; here they are checked over the finite
grid of profiles whose world masses are multiples of ``1/d``.  A "pass" only
means no counterexample exists on that grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Iterator, Sequence

from .beliefs import (
    BinaryBelief,
    Profile,
    completeness_violation,
    deductive_closure_violation,
    enumerate_grid_profiles,
    is_consistent_belief,
    profile_vector,
)
from .core import Agenda, bits
from .errors import LimitExceeded, NotSystematic, SizeMismatch

AXIOMS = ("CP", "ZP", "AN", "IND", "SYS", "MON", "CDC", "CCS", "CCP")
EVIDENCE_NOTE = "grid evidence only: 'pass' means no counterexample among the enumerated profiles"
KINDS = ("oligarchy", "trivial", "dictatorship", "threshold", "unanimity-default")

DEFAULT_MAX_TABLES = 1 << 16
DEFAULT_MAX_NODES = 5_000_000

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class AggregatorSpec:
    """A built-in rule.  Individuals are numbered from 1."""

    kind: str
    n: int
    members: frozenset = frozenset()
    threshold: Fraction | None = None
    strict: bool = False
    default: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        members = frozenset(self.members)
        if self.kind == "trivial":
            members = frozenset(range(1, self.n + 1))
        if self.kind in ("oligarchy", "dictatorship", "trivial"):
            if not members or not members <= set(range(1, self.n + 1)):
                raise ValueError(f"members must be a non-empty subset of 1..{self.n}")
            if self.kind == "dictatorship" and len(members) != 1:
                raise ValueError("a dictatorship has exactly one member")
        object.__setattr__(self, "members", members)
        if self.kind == "threshold":
            t = Fraction(self.threshold)
            if not 0 < t <= 1:
                raise ValueError("threshold must lie in (0, 1]")
            object.__setattr__(self, "threshold", t)
        object.__setattr__(self, "default", frozenset(self.default))

    @classmethod
    def oligarchy(cls, members: Iterable[int], n: int) -> AggregatorSpec:
        return cls("oligarchy", n, frozenset(members))

    @classmethod
    def trivial(cls, n: int) -> AggregatorSpec:
        return cls("trivial", n)

    @classmethod
    def dictatorship(cls, i: int, n: int) -> AggregatorSpec:
        return cls("dictatorship", n, frozenset({i}))

    @classmethod
    def quota(cls, t, n: int, strict: bool = False) -> AggregatorSpec:
        return cls("threshold", n, threshold=Fraction(t), strict=strict)

    @classmethod
    def unanimity_default(cls, issues: Iterable[int], n: int) -> AggregatorSpec:
        """Accept the default issues unless everyone is certain against them,
        and any other issue only when everyone is certain of it."""
        return cls("unanimity-default", n, default=frozenset(issues))

    def decide(self, vector: Vector, issue: int) -> bool:
        if self.kind in ("oligarchy", "dictatorship", "trivial"):
            return all(vector[i - 1] == 1 for i in self.members)
        if self.kind == "threshold":
            mean = sum(vector, Fraction(0)) / len(vector)
            return mean > self.threshold if self.strict else mean >= self.threshold
        if issue in self.default:
            return any(x != 0 for x in vector)
        return all(x == 1 for x in vector)

    def describe(self) -> str:
        if self.kind == "threshold":
            op = ">" if self.strict else ">="
            return f"threshold(mean {op} {self.threshold}, n={self.n})"
        if self.kind == "unanimity-default":
            return f"unanimity-default({sorted(self.default)}, n={self.n})"
        return f"{self.kind}({sorted(self.members)}, n={self.n})"


@dataclass(frozen=True)
class GTable:
    """Finite table from probability vectors on the ``1/d`` grid to {0, 1}."""

    n: int
    d: int
    entries: dict = field(hash=False)

    def __call__(self, vector: Vector) -> int:
        return self.entries[tuple(vector)]

    def decide(self, vector: Vector, issue: int) -> bool:
        return bool(self.entries[tuple(vector)])

    def grid(self) -> list[Vector]:
        return sorted(self.entries)

    @classmethod
    def from_function(cls, n: int, d: int, fn: Callable[[Vector], int]) -> GTable:
        return cls(n, d, {v: int(bool(fn(v))) for v in grid_vectors(n, d)})

    def is_monotone(self) -> bool:
        return check_fact1(self).holds

    def oligarchy_members(self) -> frozenset | None:
        """The group M (1-based) if this table is the oligarchy of M on its domain."""
        for k in range(1, self.n + 1):
            for group in combinations(range(self.n), k):
                if all(v == all(a[i] == 1 for i in group) for a, v in self.entries.items()):
                    return frozenset(i + 1 for i in group)
        return None

    def describe(self) -> str:
        ones = [v for v in self.grid() if self.entries[v]]
        return "G = 1 on " + ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in ones)


@dataclass(frozen=True)
class IndependentRule:
    """One table per agenda issue (independent but not necessarily systematic)."""

    n: int
    d: int
    tables: tuple[GTable, ...]

    def decide(self, vector: Vector, issue: int) -> bool:
        return self.tables[issue].decide(vector, issue)

    def oligarchy_members(self) -> frozenset | None:
        first = self.tables[0]
        if any(t.entries != first.entries for t in self.tables[1:]):
            return None
        return first.oligarchy_members()

    def describe(self) -> str:
        return "; ".join(f"issue {i}: {t.describe()}" for i, t in enumerate(self.tables))


def grid_vectors(n: int, d: int) -> list[Vector]:
    return [tuple(Fraction(k, d) for k in ks) for ks in product(range(d + 1), repeat=n)]


def evaluate(rule, pr: Profile, agenda: Agenda) -> BinaryBelief:
    if rule.n != pr.n:
        raise SizeMismatch(f"rule expects {rule.n} individuals, profile has {pr.n}")
    accepted = 0
    for i, issue in enumerate(agenda.issues):
        if rule.decide(profile_vector(pr, issue), i):
            accepted |= 1 << i
    return BinaryBelief(agenda, accepted)


@dataclass(frozen=True)
class AxiomWitness:
    """Replayable counterexample.

    ``profile``/``issue`` locate the violation; ``other``/``other_issue`` hold
    the second profile for IND, SYS, MON and AN, and ``permutation`` the
    1-based reordering used for AN (``other`` = ``profile`` permuted).
    """

    axiom: str
    profile: Profile
    issue: int | None = None
    other: Profile | None = None
    other_issue: int | None = None
    permutation: tuple[int, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass" | "fail" | "not-checked"
    witness: AxiomWitness | None = None


@dataclass(frozen=True)
class AxiomReport:
    rule: str
    d: int
    profiles_checked: int
    verdicts: dict
    note: str = EVIDENCE_NOTE

    def status(self, axiom: str) -> str:
        return self.verdicts[axiom].status

    def passed(self, *axioms: str) -> bool:
        return all(self.status(a) == "pass" for a in axioms)

    def failures(self) -> dict:
        return {a: v.witness for a, v in self.verdicts.items() if v.status == "fail"}


class _Grid:
    """Profiles of the ``1/d`` grid with their probability vectors on every issue."""

    def __init__(self, agenda: Agenda, n: int, d: int, limit: int | None = None):
        self.agenda = agenda
        self.n = n
        self.d = d
        kw = {} if limit is None else {"limit": limit}
        self.profiles = list(enumerate_grid_profiles(agenda.universe, n, d, **kw))
        self.index = {pr.key(): k for k, pr in enumerate(self.profiles)}
        self.vectors = [
            [profile_vector(pr, issue) for issue in agenda.issues] for pr in self.profiles
        ]

    def outputs(self, rule) -> list[int]:
        out = []
        for vecs in self.vectors:
            acc = 0
            for i, v in enumerate(vecs):
                if rule.decide(v, i):
                    acc |= 1 << i
            out.append(acc)
        return out


def _leq(a: Vector, b: Vector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _check(grid: _Grid, out: list[int], axioms: Sequence[str]) -> dict:
    agenda = grid.agenda
    nissues = len(agenda)
    profiles = grid.profiles
    vectors = grid.vectors
    found: dict[str, AxiomWitness] = {}
    wanted = set(axioms)
    one = tuple(Fraction(1) for _ in range(grid.n))
    zero = tuple(Fraction(0) for _ in range(grid.n))

    for k, pr in enumerate(profiles):
        acc = out[k]
        for i in range(nissues):
            v = vectors[k][i]
            if "CP" in wanted and "CP" not in found and v == one and not acc >> i & 1:
                found["CP"] = AxiomWitness("CP", pr, i, detail="all certain, not accepted")
            if "ZP" in wanted and "ZP" not in found and v == zero and acc >> i & 1:
                found["ZP"] = AxiomWitness("ZP", pr, i, detail="all give zero, accepted")
        bel = BinaryBelief(agenda, acc)
        if "CDC" in wanted and "CDC" not in found:
            j = deductive_closure_violation(bel)
            if j is not None:
                found["CDC"] = AxiomWitness("CDC", pr, j, detail="entailed but not accepted")
        if "CCS" in wanted and "CCS" not in found and not is_consistent_belief(bel):
            found["CCS"] = AxiomWitness("CCS", pr, detail="accepted set is inconsistent")
        if "CCP" in wanted and "CCP" not in found:
            pair = completeness_violation(bel)
            if pair is not None:
                found["CCP"] = AxiomWitness("CCP", pr, pair[0], other_issue=pair[1],
                                            detail="neither member of the pair accepted")

    if "AN" in wanted:
        perms = [p for p in permutations(range(grid.n)) if list(p) != list(range(grid.n))]
        for k, pr in enumerate(profiles):
            for perm in perms:
                k2 = grid.index[pr.permuted(perm).key()]
                diff = out[k] ^ out[k2]
                if diff:
                    i = next(bits(diff))
                    found["AN"] = AxiomWitness(
                        "AN", pr, i, other=profiles[k2],
                        permutation=tuple(p + 1 for p in perm),
                        detail="output changes under permutation",
                    )
                    break
            if "AN" in found:
                break

    if "IND" in wanted:
        for i in range(nissues):
            seen: dict = {}
            for k in range(len(profiles)):
                v = vectors[k][i]
                bit = out[k] >> i & 1
                if v in seen and seen[v][0] != bit:
                    found["IND"] = AxiomWitness(
                        "IND", profiles[seen[v][1]], i, other=profiles[k], other_issue=i,
                        detail="same vector on the issue, different outputs",
                    )
                    break
                seen.setdefault(v, (bit, k))
            if "IND" in found:
                break

    if "SYS" in wanted:
        seen = {}
        for k in range(len(profiles)):
            for i in range(nissues):
                v = vectors[k][i]
                bit = out[k] >> i & 1
                if v in seen and seen[v][0] != bit:
                    _, k0, i0 = seen[v]
                    found["SYS"] = AxiomWitness(
                        "SYS", profiles[k0], i0, other=profiles[k], other_issue=i,
                        detail="same vector, different outputs",
                    )
                    break
                seen.setdefault(v, (bit, k, i))
            if "SYS" in found:
                break

    if "MON" in wanted:
        for i in range(nissues):
            reps: dict = {}
            for k in range(len(profiles)):
                reps.setdefault((vectors[k][i], out[k] >> i & 1), k)
            ones = [(v, k) for (v, b), k in reps.items() if b]
            zeros = [(v, k) for (v, b), k in reps.items() if not b]
            hit = next(((k1, k0) for v1, k1 in ones for v0, k0 in zeros if _leq(v1, v0)), None)
            if hit:
                found["MON"] = AxiomWitness(
                    "MON", profiles[hit[0]], i, other=profiles[hit[1]], other_issue=i,
                    detail="accepted at a vector, rejected at a componentwise larger one",
                )
                break

    return {a: Verdict("fail", found[a]) if a in found else Verdict("pass") for a in axioms}


def _normalize(axioms: Iterable[str]) -> list[str]:
    result = []
    for a in axioms:
        a = a.upper()
        if a not in AXIOMS:
            raise ValueError(f"unknown axiom {a!r}")
        if a not in result:
            result.append(a)
    return result


def check_axioms(
    rule, agenda: Agenda, d: int, axioms: Iterable[str] = AXIOMS, limit: int | None = None
) -> AxiomReport:
    axioms = _normalize(axioms)
    grid = _Grid(agenda, rule.n, d, limit)
    verdicts = _check(grid, grid.outputs(rule), axioms)
    for a in AXIOMS:
        verdicts.setdefault(a, Verdict("not-checked"))
    describe = getattr(rule, "describe", lambda: repr(rule))
    return AxiomReport(describe(), d, len(grid.profiles), verdicts)


def replay(witness: AxiomWitness, rule, agenda: Agenda) -> bool:
    """Re-evaluate ``rule`` on the witness and confirm the violation is real."""
    a = witness.axiom
    bel = evaluate(rule, witness.profile, agenda)
    i = witness.issue
    if a in ("CP", "ZP"):
        v = profile_vector(witness.profile, agenda.issues[i])
        target = Fraction(1 if a == "CP" else 0)
        return all(x == target for x in v) and (i in bel) == (a == "ZP")
    if a == "CDC":
        return deductive_closure_violation(bel) is not None and i not in bel
    if a == "CCS":
        return not is_consistent_belief(bel)
    if a == "CCP":
        j = witness.other_issue
        return agenda.complement_index(i) == j and i not in bel and j not in bel
    other = evaluate(rule, witness.other, agenda)
    if a == "AN":
        perm = [p - 1 for p in witness.permutation]
        return witness.profile.permuted(perm) == witness.other and bel.accepted != other.accepted
    j = witness.other_issue
    v1 = profile_vector(witness.profile, agenda.issues[i])
    v2 = profile_vector(witness.other, agenda.issues[j])
    if a in ("IND", "SYS"):
        return (a == "SYS" or i == j) and v1 == v2 and (i in bel) != (j in other)
    if a == "MON":
        return i == j and _leq(v1, v2) and i in bel and j not in other
    raise ValueError(f"unknown axiom {a!r}")


def extract_g(rule, agenda: Agenda, d: int, limit: int | None = None) -> GTable:
    """Read off the systematic table realised by ``rule`` on the grid."""
    grid = _Grid(agenda, rule.n, d, limit)
    out = grid.outputs(rule)
    entries: dict = {}
    origin: dict = {}
    for k, vecs in enumerate(grid.vectors):
        for i, v in enumerate(vecs):
            bit = out[k] >> i & 1
            if v in entries and entries[v] != bit:
                k0, i0 = origin[v]
                raise NotSystematic(
                    f"vector {tuple(str(x) for x in v)} maps to both outputs",
                    (grid.profiles[k0], i0),
                    (grid.profiles[k], i),
                )
            if v not in entries:
                entries[v] = bit
                origin[v] = (k, i)
    return GTable(rule.n, d, dict(sorted(entries.items())))


@dataclass(frozen=True)
class FactVerdict:
    fact: str
    holds: bool
    witness: tuple | None = None
    checked: int = 0
    skipped: int = 0


def check_fact1(g: GTable) -> FactVerdict:
    """G(a) = 1 and a <= b imply G(b) = 1."""
    grid = g.grid()
    checked = 0
    for a in grid:
        if not g.entries[a]:
            continue
        for b in grid:
            if _leq(a, b):
                checked += 1
                if not g.entries[b]:
                    return FactVerdict("fact1", False, (a, b), checked)
    return FactVerdict("fact1", True, None, checked)


def check_fact2(g: GTable) -> FactVerdict:
    """G(a) = G(b) = 1 and a + b - 1 >= 0 imply G(a + b - 1) = 1.

    Combinations that fall outside the table's domain are counted as skipped.
    """
    ones = [v for v in g.grid() if g.entries[v]]
    checked = skipped = 0
    for a in ones:
        for b in ones:
            c = tuple(x + y - 1 for x, y in zip(a, b))
            if any(x < 0 for x in c):
                continue
            if c not in g.entries:
                skipped += 1
                continue
            checked += 1
            if not g.entries[c]:
                return FactVerdict("fact2", False, (a, b, c), checked, skipped)
    return FactVerdict("fact2", True, None, checked, skipped)


def check_fact1pp(g: GTable) -> FactVerdict:
    """G(a) = 1 implies G(c) = 1 for every c >= |2a - 1|."""
    grid = g.grid()
    checked = 0
    for a in grid:
        if not g.entries[a]:
            continue
        floor = tuple(abs(2 * x - 1) for x in a)
        for c in grid:
            if _leq(floor, c):
                checked += 1
                if not g.entries[c]:
                    return FactVerdict("fact1pp", False, (a, c), checked)
    return FactVerdict("fact1pp", True, None, checked)


def enumerate_tables(
    n: int, d: int, monotone: bool = True, limit: int = DEFAULT_MAX_TABLES
) -> Iterator[GTable]:
    """All (monotone) 0/1 tables on the grid, in a fixed depth-first order."""
    points = sorted(grid_vectors(n, d), key=lambda v: (sum(v), v))
    if not monotone and (1 << len(points)) > limit:
        raise LimitExceeded(f"2^{len(points)} tables exceed the cap of {limit}")
    below = [[j for j in range(k) if _leq(points[j], points[k])] for k in range(len(points))]
    values = [0] * len(points)
    produced = 0

    def go(k: int):
        nonlocal produced
        if k == len(points):
            produced += 1
            if produced > limit:
                raise LimitExceeded(f"more than {limit} tables on the grid")
            yield GTable(n, d, dict(sorted(zip(points, values))))
            return
        forced = monotone and any(values[j] for j in below[k])
        for bit in ((1,) if forced else (0, 1)):
            values[k] = bit
            yield from go(k + 1)

    return go(0)


def sweep_systematic(
    agenda: Agenda, n: int, d: int, axioms: Iterable[str],
    monotone: bool = True, limit: int = DEFAULT_MAX_TABLES,
) -> list[GTable]:
    """Every systematic table rule passing all ``axioms`` on the grid."""
    axioms = _normalize(axioms)
    grid = _Grid(agenda, n, d)
    survivors = []
    for table in enumerate_tables(n, d, monotone, limit):
        verdicts = _check(grid, grid.outputs(table), axioms)
        if all(v.status == "pass" for v in verdicts.values()):
            survivors.append(table)
    return survivors


_LOCAL_AXIOMS = {"CP", "ZP", "AN", "MON", "IND"}
_GLOBAL_AXIOMS = {"CDC", "CCS", "CCP"}


def _table_ok(table: GTable, axioms: set) -> bool:
    n = table.n
    one = tuple(Fraction(1) for _ in range(n))
    zero = tuple(Fraction(0) for _ in range(n))
    if "CP" in axioms and not table.entries[one]:
        return False
    if "ZP" in axioms and table.entries[zero]:
        return False
    if "MON" in axioms and not table.is_monotone():
        return False
    if "AN" in axioms:
        for v, bit in table.entries.items():
            if any(table.entries[tuple(v[p] for p in perm)] != bit for perm in permutations(range(n))):
                return False
    return True


def sweep_independent(
    agenda: Agenda, n: int, d: int, axioms: Iterable[str],
    monotone: bool = True, stop: Callable[[IndependentRule], bool] | None = None,
    limit: int = DEFAULT_MAX_TABLES, max_nodes: int = DEFAULT_MAX_NODES,
) -> list[IndependentRule]:
    """Rules with one table per issue passing all ``axioms`` on the grid.

    Tables are assigned issue by issue (complement pairs adjacent).  A partial
    assignment is abandoned as soon as some profile shows a violation of CDC,
    CCS or CCP that no later assignment can repair: accepting more issues
    only shrinks the intersection of the accepted set.  If ``stop`` returns
    true for a solution, the sweep ends with that solution last.
    """
    axioms = set(_normalize(axioms))
    if "SYS" in axioms:
        raise ValueError("SYS forces one shared table; use sweep_systematic")
    pool = [t for t in enumerate_tables(n, d, monotone, limit) if _table_ok(t, axioms)]
    grid = _Grid(agenda, n, d)
    nprof = len(grid.profiles)
    points = pool[0].grid() if pool else []
    pos = {v: p for p, v in enumerate(points)}
    rows = [tuple(t.entries[v] for v in points) for t in pool]
    order = [x for pair in agenda.pairs() for x in pair]
    members = [agenda.members(i) for i in range(len(agenda))]
    vidx = [[pos[grid.vectors[k][i]] for k in range(nprof)] for i in range(len(agenda))]
    check_cdc = "CDC" in axioms
    check_ccs = "CCS" in axioms
    check_ccp = "CCP" in axioms
    full = agenda.universe.full

    chosen: dict[int, int] = {}
    solutions: list[IndependentRule] = []
    nodes = 0

    def feasible(inter, rejected, i, accepted_i):
        for k in range(nprof):
            if accepted_i[k]:
                if check_ccs and inter[k] == 0:
                    return False
                if check_cdc:
                    for b in rejected[k]:
                        if inter[k] & ~members[b] == 0:
                            return False
            else:
                if check_cdc and inter[k] & ~members[i] == 0:
                    return False
                if check_ccp:
                    c = agenda.complement_index(i)
                    if c in chosen and c in rejected[k]:
                        return False
        return True

    def go(depth, inter, rejected):
        nonlocal nodes
        if depth == len(order):
            rule = IndependentRule(n, d, tuple(pool[chosen[i]] for i in range(len(agenda))))
            solutions.append(rule)
            return bool(stop and stop(rule))
        i = order[depth]
        for t, row in enumerate(rows):
            nodes += 1
            if nodes > max_nodes:
                raise LimitExceeded(f"independent sweep exceeded {max_nodes} search nodes")
            accepted_i = [row[vidx[i][k]] for k in range(nprof)]
            new_inter = [inter[k] & members[i] if accepted_i[k] else inter[k] for k in range(nprof)]
            if not feasible(new_inter, rejected, i, accepted_i):
                continue
            new_rejected = [
                rejected[k] if accepted_i[k] else rejected[k] + (i,) for k in range(nprof)
            ]
            chosen[i] = t
            if go(depth + 1, new_inter, new_rejected):
                return True
            del chosen[i]
        return False

    go(0, [full] * nprof, [()] * nprof)
    return solutions


def search_counterexample(
    agenda: Agenda, n: int, d: int, axioms: Iterable[str],
    monotone: bool = True, mode: str = "systematic", forbid_oligarchies: bool = True,
    limit: int = DEFAULT_MAX_TABLES,
):
    """First rule passing ``axioms`` on the grid that is not an oligarchy, or None.

    ``mode`` is "systematic" (one shared table) or "independent" (one table
    per issue).  The result is grid evidence only.
    """
    def admissible(rule) -> bool:
        return not forbid_oligarchies or rule.oligarchy_members() is None

    if mode == "systematic":
        return next((t for t in sweep_systematic(agenda, n, d, axioms, monotone, limit)
                     if admissible(t)), None)
    if mode == "independent":
        found = sweep_independent(agenda, n, d, axioms, monotone, stop=admissible, limit=limit)
        return found[-1] if found and admissible(found[-1]) else None
    raise ValueError(f"unknown mode {mode!r}")
