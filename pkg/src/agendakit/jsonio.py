"""JSON readers and writers for agendas, profiles and reports.

Agenda files come in two shapes, told apart by their keys::

    {"worlds": 4 | ["w00", ...], "issues": [{"name": "p", "worlds": [1, 3]}, ...],
     "auto_close": true}
    {"atoms": ["p", "q"], "formulas": ["p", "q", "p & q"]}

Profiles are ``{"masses": [[[num, den], ...] per world, ...] per individual}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .aggregators import AxiomReport, AxiomWitness, FactVerdict, GTable, IndependentRule
from .beliefs import MassFunction, Profile
from .classifier import ClassificationReport
from .core import Agenda, IssueSet, Universe, make_agenda
from .entailment import Hop
from .errors import InvalidAgenda, InvalidProfile
from .formulas import compile_agenda_from_formulas
from .mis import MisFamily
from .oracle import VerificationRun
from .properties import Negation, PropertyFlags


def agenda_from_json(data: Any) -> Agenda:
    if not isinstance(data, dict):
        raise InvalidAgenda("agenda JSON must be an object")
    if "atoms" in data:
        atoms = data["atoms"]
        formulas = data.get("formulas")
        if not isinstance(atoms, list) or not isinstance(formulas, list):
            raise InvalidAgenda("'atoms' and 'formulas' must be lists")
        return compile_agenda_from_formulas([str(a) for a in atoms], [str(f) for f in formulas])
    if "worlds" not in data or "issues" not in data:
        raise InvalidAgenda("agenda JSON needs 'worlds' and 'issues' (or 'atoms' and 'formulas')")
    worlds = data["worlds"]
    if isinstance(worlds, bool) or not isinstance(worlds, (int, list)):
        raise InvalidAgenda("'worlds' must be a count or a list of names")
    universe = Universe(worlds) if isinstance(worlds, int) else Universe(len(worlds), tuple(worlds))
    sets, names = [], []
    for entry in data["issues"]:
        if isinstance(entry, list):
            entry = {"worlds": entry}
        if not isinstance(entry, dict) or "worlds" not in entry:
            raise InvalidAgenda("each issue needs a 'worlds' list")
        sets.append({universe.world_index(w) for w in entry["worlds"]})
        names.append(entry.get("name"))
    return make_agenda(universe, sets, auto_close=bool(data.get("auto_close", False)), names=names)


def agenda_to_json(agenda: Agenda) -> dict:
    u = agenda.universe
    return {
        "worlds": list(u.labels) if u.labels else u.size,
        "issues": [
            {"name": name, "worlds": issue.worlds()}
            for name, issue in zip(agenda.names, agenda.issues)
        ],
        "auto_close": False,
    }


def _fraction(x: Any) -> Fraction:
    try:
        if isinstance(x, list):
            num, den = x
            return Fraction(int(num), int(den))
        if isinstance(x, (int, str)):
            return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidProfile(f"bad rational {x!r}") from exc
    raise InvalidProfile(f"bad rational {x!r}; use [num, den]")


def profile_from_json(data: Any, universe: Universe) -> Profile:
    if not isinstance(data, dict) or not isinstance(data.get("masses"), list):
        raise InvalidProfile("profile JSON needs a 'masses' list")
    return Profile(tuple(
        MassFunction(universe, tuple(_fraction(x) for x in row)) for row in data["masses"]
    ))


def profile_to_json(pr: Profile) -> dict:
    return {"masses": [[[m.numerator, m.denominator] for m in mf.mass] for mf in pr.members]}


def _frac(x: Fraction) -> str:
    return str(x)


def issue_set_to_json(s: IssueSet) -> list[str]:
    return s.names()


def worlds_to_json(universe: Universe, mask: int) -> list[str]:
    return [universe.label(w) for w in universe.worlds(mask)]


def negation_to_json(w: Negation) -> dict:
    return {"mis": w.y.names(), "negated_subset": w.z.names(), "result": w.negated.names()}


def hops_to_json(hops: list[Hop] | None, agenda: Agenda):
    if hops is None:
        return None
    return [
        {"from": agenda.names[h.source], "to": agenda.names[h.target], "witness": h.witness.names()}
        for h in hops
    ]


def mis_to_json(mis: MisFamily) -> list[list[str]]:
    return [y.names() for y in mis]


def flags_to_json(flags: PropertyFlags) -> dict:
    agenda = flags.agenda
    w = flags.witnesses
    witnesses: dict = {}
    if "even_negatable" in w:
        witnesses["even_negatable"] = negation_to_json(w["even_negatable"])
    if "pair_negatable" in w:
        witnesses["pair_negatable"] = negation_to_json(w["pair_negatable"])
    if "non_simple" in w:
        witnesses["non_simple"] = w["non_simple"].names()
    if "not_path_connected" in w:
        a, b = w["not_path_connected"]
        witnesses["not_path_connected"] = {"from": agenda.names[a], "to": agenda.names[b]}
    if "not_negation_connected" in w:
        witnesses["not_negation_connected"] = agenda.names[w["not_negation_connected"]]
    if "m_set" in w:
        witnesses["m_set"] = w["m_set"].names()
    return {
        "issues": list(agenda.names),
        "path_connected": flags.path_connected,
        "even_negatable": flags.even_negatable,
        "pair_negatable": flags.pair_negatable,
        "non_simple": flags.non_simple,
        "negation_connected": flags.negation_connected,
        "blocked": flags.blocked,
        "h0": flags.h0.names(),
        "median_points": worlds_to_json(agenda.universe, flags.median_points),
        "mis": mis_to_json(w["mis"]),
        "witnesses": witnesses,
    }


def classification_to_json(report: ClassificationReport) -> dict:
    agenda = report.flags.agenda
    rows = []
    for row in report.rows:
        wit: dict = {}
        for key, value in row.witnesses.items():
            if key == "even_negation":
                wit[key] = negation_to_json(value)
            elif key in ("non_simple_mis", "m_set"):
                wit[key] = value.names()
            elif key == "mis":
                wit[key] = mis_to_json(value)
            elif key == "no_path":
                wit[key] = {"from": agenda.names[value[0]], "to": agenda.names[value[1]]}
            elif key in ("no_path_to_complement", "blocking_issue"):
                wit[key] = agenda.names[value]
            elif key == "paths" and isinstance(value, dict):
                wit[key] = {agenda.names[i]: hops_to_json(h, agenda) for i, h in value.items()}
            elif key == "paths":
                wit[key] = [hops_to_json(h, agenda) for h in value]
            elif key == "median_points":
                wit[key] = worlds_to_json(agenda.universe, value)
        rows.append({
            "row": row.row,
            "result": row.result,
            "no_aggregator_satisfies": row.axioms,
            "agenda_condition": row.condition,
            "applies": row.applies,
            "trigger": row.trigger,
            "witnesses": wit,
        })
    return {"flags": flags_to_json(report.flags), "results": rows}


def witness_to_json(w: AxiomWitness, agenda: Agenda) -> dict:
    out: dict = {"axiom": w.axiom, "detail": w.detail, "profile": profile_to_json(w.profile)}
    if w.issue is not None:
        out["issue"] = agenda.names[w.issue]
    if w.other is not None:
        out["other_profile"] = profile_to_json(w.other)
    if w.other_issue is not None:
        out["other_issue"] = agenda.names[w.other_issue]
    if w.permutation is not None:
        out["permutation"] = list(w.permutation)
    return out


def axiom_report_to_json(report: AxiomReport, agenda: Agenda) -> dict:
    verdicts = {}
    for axiom, v in report.verdicts.items():
        entry: dict = {"status": v.status}
        if v.witness is not None:
            entry["witness"] = witness_to_json(v.witness, agenda)
        verdicts[axiom] = entry
    return {
        "rule": report.rule,
        "grid": report.d,
        "profiles_checked": report.profiles_checked,
        "verdicts": verdicts,
        "note": report.note,
    }


def vector_to_json(v) -> list[str]:
    return [_frac(x) for x in v]


def gtable_to_json(g: GTable) -> dict:
    return {"n": g.n, "d": g.d, "ones": [vector_to_json(v) for v in g.grid() if g.entries[v]]}


def rule_to_json(rule, agenda: Agenda) -> dict:
    if isinstance(rule, GTable):
        return {"kind": "systematic-table", **gtable_to_json(rule)}
    if isinstance(rule, IndependentRule):
        return {
            "kind": "independent-tables",
            "tables": {agenda.names[i]: gtable_to_json(t) for i, t in enumerate(rule.tables)},
        }
    raise TypeError(f"cannot serialise {rule!r}")


def fact_to_json(f: FactVerdict) -> dict:
    return {
        "fact": f.fact,
        "holds": f.holds,
        "witness": None if f.witness is None else [vector_to_json(v) for v in f.witness],
        "checked": f.checked,
        "skipped": f.skipped,
    }


def verification_to_json(run: VerificationRun) -> dict:
    return {
        "worlds": list(run.worlds),
        "max_pairs": run.max_pairs,
        "agendas": run.agendas,
        "algebras": run.algebras,
        "ok": run.ok,
        "checks": {
            name: {"instances": t.instances, "counterexamples": [repr(c) for c in t.counterexamples]}
            for name, t in run.checks.items()
        },
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
