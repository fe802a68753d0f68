"""Which impossibility theorem an agenda falls under."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Agenda
from .entailment import entailment_graph, path_witness
from .properties import PropertyFlags, analyze

ROWS = (
    ("oligarchy", "UD, ZP, CP and IND + CDC + Non-oligarchy", "path-connected, even-negatable"),
    ("triviality", "UD, ZP, CP and IND + CDC + AN + Non-triviality", "negation-connected"),
    ("impossibility", "UD, CP and IND + CCS and CCP", "blocked"),
)


@dataclass(frozen=True)
class RowVerdict:
    row: int
    result: str
    axioms: str
    condition: str
    applies: bool
    trigger: dict
    witnesses: dict


@dataclass(frozen=True)
class ClassificationReport:
    flags: PropertyFlags
    rows: tuple[RowVerdict, ...]

    def applies(self, row: int) -> bool:
        return self.rows[row - 1].applies


def classify(agenda: Agenda) -> ClassificationReport:
    """Compute agenda flags and decide each of the three results.

    A "yes" row means no aggregator satisfies the listed axioms (row 1 and 2:
    beyond oligarchies / the trivial rule).  Witnesses support each decision:
    entailment paths and the negatable set for yes-verdicts, a missing path,
    the m-set or a median point for no-verdicts.
    """
    flags = analyze(agenda)
    graph = entailment_graph(agenda)
    w = flags.witnesses

    row1: dict = {}
    if flags.path_connected and flags.even_negatable:
        row1["even_negation"] = w["even_negatable"]
        row1["non_simple_mis"] = w["non_simple"]
    else:
        if not flags.path_connected:
            row1["no_path"] = w["not_path_connected"]
        if not flags.even_negatable:
            row1["mis"] = w["mis"]

    row2: dict = {}
    if flags.negation_connected:
        row2["paths"] = {
            i: path_witness(i, agenda.complement_index(i), graph) for i in range(len(agenda))
        }
    else:
        row2["no_path_to_complement"] = w["not_negation_connected"]
        if "m_set" in w:
            row2["m_set"] = w["m_set"]

    row3: dict = {}
    if flags.blocked:
        a = flags.h0.indices()[0]
        c = agenda.complement_index(a)
        row3["blocking_issue"] = a
        row3["paths"] = (path_witness(a, c, graph), path_witness(c, a, graph))
    else:
        row3["median_points"] = flags.median_points

    triggers = (
        {"path_connected": flags.path_connected, "even_negatable": flags.even_negatable},
        {"negation_connected": flags.negation_connected},
        {"blocked": flags.blocked},
    )
    applies = (
        flags.path_connected and flags.even_negatable,
        flags.negation_connected,
        flags.blocked,
    )
    rows = tuple(
        RowVerdict(k + 1, name, axioms, condition, applies[k], triggers[k], wit)
        for k, ((name, axioms, condition), wit) in enumerate(zip(ROWS, (row1, row2, row3)))
    )
    return ClassificationReport(flags, rows)
