"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 invalid agenda or profile,
3 limit exceeded, 4 verification counterexample found.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import jsonio
from .aggregators import (
    AXIOMS,
    AggregatorSpec,
    check_axioms,
    check_fact1,
    check_fact1pp,
    check_fact2,
    evaluate,
    extract_g,
    search_counterexample,
)
from .beliefs import (
    completeness_violation,
    deductive_closure_violation,
    is_consistent_belief,
)
from .classifier import classify
from .entailment import entailment_graph, path_witness
from .errors import (
    AgendaKitError,
    FormulaSyntaxError,
    InvalidAgenda,
    InvalidProfile,
    LimitExceeded,
    NotSystematic,
)
from . import mis as mis_module
from .mis import minimally_inconsistent_subsets
from .oracle import verify_lemmas
from .properties import analyze, median_points

log = logging.getLogger("agendakit")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_LIMIT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _agenda(args):
    return jsonio.agenda_from_json(_load_json(args.agenda))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_flags(flags) -> None:
    agenda = flags.agenda
    rows = [
        ("path-connected", flags.path_connected),
        ("even-negatable", flags.even_negatable),
        ("pair-negatable", flags.pair_negatable),
        ("non-simple", flags.non_simple),
        ("negation-connected", flags.negation_connected),
        ("blocked", flags.blocked),
    ]
    print("issues: " + ", ".join(agenda.names))
    for name, value in rows:
        print(f"  {name:<20} {_yes(value)}")
    print(f"  {'H0':<20} {flags.h0}")
    print(f"  {'median points':<20} {agenda.universe.format(flags.median_points)}")
    w = flags.witnesses
    if "even_negatable" in w:
        neg = w["even_negatable"]
        print(f"even negation: negating {neg.z} in {neg.y} gives consistent {neg.negated}")
    if "non_simple" in w:
        print(f"MIS of size >= 3: {w['non_simple']}")
    if "not_path_connected" in w:
        a, b = w["not_path_connected"]
        print(f"no path: {agenda.names[a]} -/-> {agenda.names[b]}")
    if "not_negation_connected" in w:
        print(f"no path to complement from: {agenda.names[w['not_negation_connected']]}")
    if "m_set" in w:
        print(f"M-set: {w['m_set']}")


def _print_hops(hops, agenda) -> None:
    for h in hops:
        print(f"  {agenda.names[h.source]} |=* {agenda.names[h.target]}   given {h.witness}")


def cmd_analyze(args) -> int:
    flags = analyze(_agenda(args))
    if args.json:
        print(jsonio.dumps(jsonio.flags_to_json(flags)))
    else:
        _print_flags(flags)
    return EXIT_OK


def cmd_mis(args) -> int:
    agenda = _agenda(args)
    family = minimally_inconsistent_subsets(agenda, args.max_size)
    if args.json:
        print(jsonio.dumps(jsonio.mis_to_json(family)))
    else:
        for y in family:
            print(y)
    return EXIT_OK


def cmd_path(args) -> int:
    agenda = _agenda(args)
    graph = entailment_graph(agenda)
    src, dst = agenda.index_of(args.source), agenda.index_of(args.target)
    hops = path_witness(src, dst, graph)
    if args.json:
        print(jsonio.dumps({
            "from": agenda.names[src], "to": agenda.names[dst],
            "path": jsonio.hops_to_json(hops, agenda),
        }))
    elif hops is None:
        print(f"no path from {agenda.names[src]} to {agenda.names[dst]}")
    else:
        print(f"{len(hops)}-hop chain from {agenda.names[src]} to {agenda.names[dst]}:")
        _print_hops(hops, agenda)
    return EXIT_OK


def cmd_median(args) -> int:
    agenda = _agenda(args)
    mask = median_points(minimally_inconsistent_subsets(agenda))
    if args.json:
        print(jsonio.dumps({"median_points": jsonio.worlds_to_json(agenda.universe, mask)}))
    else:
        print(agenda.universe.format(mask))
    return EXIT_OK


def cmd_classify(args) -> int:
    report = classify(_agenda(args))
    if args.json:
        print(jsonio.dumps(jsonio.classification_to_json(report)))
        return EXIT_OK
    _print_flags(report.flags)
    agenda = report.flags.agenda
    print()
    for row in report.rows:
        print(f"({row.row}) {row.result} result: {_yes(row.applies)}")
        print(f"    no BA satisfies: {row.axioms}")
        print(f"    agenda condition: {row.condition}")
        wit = row.witnesses
        if "median_points" in wit:
            print(f"    median point(s): {agenda.universe.format(wit['median_points'])}")
        if "blocking_issue" in wit:
            a = wit["blocking_issue"]
            print(f"    {agenda.names[a]} and its complement reach each other:")
            for hops in wit["paths"]:
                _print_hops(hops, agenda)
    return EXIT_OK


def _parse_members(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad member list {text!r}") from exc


def _build_rule(args, agenda) -> AggregatorSpec:
    try:
        if args.rule == "oligarchy":
            if not args.members:
                raise UsageError("--members is required for an oligarchy")
            return AggregatorSpec.oligarchy(_parse_members(args.members), args.n)
        if args.rule == "dictatorship":
            members = _parse_members(args.members or "1")
            if len(members) != 1:
                raise UsageError("a dictatorship takes exactly one member")
            return AggregatorSpec.dictatorship(members[0], args.n)
        if args.rule == "trivial":
            return AggregatorSpec.trivial(args.n)
        if args.rule == "threshold":
            return AggregatorSpec.quota(Fraction(args.threshold), args.n, args.strict)
        default = [agenda.index_of(x.strip()) for x in (args.default or "").split(",") if x.strip()]
        return AggregatorSpec.unanimity_default(default, args.n)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidAgenda):
            raise
        raise UsageError(str(exc)) from exc


def cmd_check_rule(args) -> int:
    agenda = _agenda(args)
    rule = _build_rule(args, agenda)
    if args.profile:
        profile = jsonio.profile_from_json(_load_json(args.profile), agenda.universe)
        bel = evaluate(rule, profile, agenda)
        closure = deductive_closure_violation(bel)
        gap = completeness_violation(bel)
        result = {
            "rule": rule.describe(),
            "accepted": bel.names(),
            "consistent": is_consistent_belief(bel),
            "deductively_closed": closure is None,
            "complete": gap is None,
        }
        if closure is not None:
            result["closure_violation"] = agenda.names[closure]
        if gap is not None:
            result["undecided_pair"] = [agenda.names[gap[0]], agenda.names[gap[1]]]
        if args.json:
            print(jsonio.dumps(result))
        else:
            for key, value in result.items():
                print(f"{key}: {value}")
        return EXIT_OK

    axioms = [a.strip().upper() for a in args.axioms.split(",") if a.strip()]
    unknown = [a for a in axioms if a not in AXIOMS]
    if unknown:
        raise UsageError(f"unknown axioms: {', '.join(unknown)}")
    report = check_axioms(rule, agenda, args.grid, axioms)
    out = jsonio.axiom_report_to_json(report, agenda)
    if args.facts:
        try:
            g = extract_g(rule, agenda, args.grid)
            out["facts"] = [jsonio.fact_to_json(f) for f in
                            (check_fact1(g), check_fact2(g), check_fact1pp(g))]
        except NotSystematic as exc:
            out["facts"] = {"error": str(exc)}
    if args.json:
        print(jsonio.dumps(out))
        return EXIT_OK
    print(f"rule: {report.rule}   grid d={report.d}   profiles: {report.profiles_checked}")
    for axiom in AXIOMS:
        v = report.verdicts[axiom]
        line = f"  {axiom:<4} {v.status}"
        if v.witness is not None:
            w = v.witness
            issue = "" if w.issue is None else f" on {agenda.names[w.issue]}"
            line += f": {w.detail}{issue}; profile {jsonio.profile_to_json(w.profile)['masses']}"
            if w.permutation:
                line += f", permutation {list(w.permutation)}"
        print(line)
    if args.facts:
        facts = out["facts"]
        if isinstance(facts, dict):
            print(f"facts: {facts['error']}")
        else:
            for f in facts:
                print(f"  {f['fact']:<8} {'holds' if f['holds'] else 'fails'}"
                      + ("" if f["witness"] is None else f"  witness {f['witness']}"))
    print(report.note)
    return EXIT_OK


def cmd_search(args) -> int:
    agenda = _agenda(args)
    axioms = [a.strip().upper() for a in args.axioms.split(",") if a.strip()]
    rule = search_counterexample(agenda, args.n, args.grid, axioms,
                                 monotone=not args.any_table, mode=args.mode)
    result = {"found": rule is not None, "note": "grid evidence only"}
    if rule is not None:
        result["rule"] = jsonio.rule_to_json(rule, agenda)
    # the oligarchy characterisation assumes at least three individuals
    result["oligarchy_claims_in_range"] = args.n >= 3
    if args.json:
        print(jsonio.dumps(result))
        return EXIT_OK
    if rule is None:
        print("no non-oligarchic rule passes on this grid (grid evidence only)")
    else:
        print(f"non-oligarchic rule found: {rule.describe()}")
        print("grid evidence only")
    if args.n < 3:
        print("note: n < 3 is outside the range of the oligarchy characterisation")
    return EXIT_OK


def cmd_verify(args) -> int:
    worlds = [int(w) for w in str(args.worlds).split(",")]
    run = verify_lemmas(worlds, args.max_pairs, algebras=not args.no_algebras)
    if args.json:
        print(jsonio.dumps(jsonio.verification_to_json(run)))
    else:
        print(f"worlds {list(run.worlds)}, up to {run.max_pairs} pairs: "
              f"{run.agendas} agendas, {run.algebras} algebras, {run.seconds:.2f}s")
        for name, t in run.checks.items():
            status = "ok" if not t.counterexamples else f"{len(t.counterexamples)} COUNTEREXAMPLES"
            print(f"  {name:<34} {t.instances:>6} checks  {status}")
            for c in t.counterexamples[:5]:
                print(f"      {c!r}")
    return EXIT_OK if run.ok else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agendakit",
        description="Agenda conditions for binarizing belief aggregation.",
    )
    parser.add_argument("--max-issues", type=int, default=mis_module.DEFAULT_MAX_ISSUES,
                        help="cap on agenda size for exhaustive MIS enumeration")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_agenda(name, help_text, func):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("agenda", help="agenda JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    with_agenda("analyze", "agenda flags with witnesses", cmd_analyze)
    p = with_agenda("mis", "list minimally inconsistent subsets", cmd_mis)
    p.add_argument("--max-size", type=int, default=None)
    p = with_agenda("path", "shortest conditional-entailment chain", cmd_path)
    p.add_argument("--from", dest="source", required=True, help="issue name or index")
    p.add_argument("--to", dest="target", required=True, help="issue name or index")
    with_agenda("median", "median points", cmd_median)
    with_agenda("classify", "which impossibility result applies", cmd_classify)

    p = with_agenda("check-rule", "check axioms of an aggregation rule on the profile grid",
                    cmd_check_rule)
    p.add_argument("--rule", required=True,
                   choices=["oligarchy", "trivial", "dictatorship", "threshold", "unanimity-default"])
    p.add_argument("--members", help="comma-separated 1-based individuals")
    p.add_argument("--threshold", default="1/2")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--default", help="comma-separated default issues (unanimity-default)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=1)
    p.add_argument("--axioms", default=",".join(a.lower() for a in AXIOMS))
    p.add_argument("--profile", help="evaluate on one profile JSON instead of the grid")
    p.add_argument("--facts", action="store_true", help="also extract G and test Facts 1, 2, 1''")

    p = with_agenda("search", "look for a non-oligarchic rule on the grid", cmd_search)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=1)
    p.add_argument("--axioms", default="cp,zp,ind,cdc")
    p.add_argument("--mode", choices=["systematic", "independent"], default="systematic")
    p.add_argument("--any-table", action="store_true", help="do not restrict to monotone tables")

    p = sub.add_parser("verify-lemmas", help="exhaustive lemma checks on small agendas")
    p.add_argument("--worlds", default="3,4", help="universe size(s), comma separated")
    p.add_argument("--max-pairs", type=int, default=3)
    p.add_argument("--no-algebras", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    saved_cap = mis_module.DEFAULT_MAX_ISSUES
    if args.max_issues != saved_cap:
        log.warning("MIS enumeration cap changed to %d issues; runtime grows exponentially",
                    args.max_issues)
        mis_module.DEFAULT_MAX_ISSUES = args.max_issues
    try:
        return args.func(args)
    except (UsageError, FormulaSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidAgenda, InvalidProfile) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except AgendaKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        mis_module.DEFAULT_MAX_ISSUES = saved_cap


def main() -> None:
    sys.exit(run())
