from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from agendakit.errors import FormulaSyntaxError, NonContingentIssue, TooManyAtoms, UnknownAtom
from agendakit.formulas import (
    And,
    Atom,
    Iff,
    Implies,
    Not,
    Or,
    atoms_of,
    compile_agenda_from_formulas,
    evaluate,
    parse_formula,
    to_text,
    truth_set,
    valuation_universe,
)

ATOMS = ("p", "q", "r", "s")


def test_conjunction():
    assert parse_formula("p & q") == And(Atom("p"), Atom("q"))
    assert parse_formula("  p&q ") == And(Atom("p"), Atom("q"))


def test_precedence():
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    assert parse_formula("~p <-> q -> r") == Iff(Not(p), Implies(q, r))
    assert parse_formula("p | q & r") == Or(p, And(q, r))
    assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse_formula("p <-> q <-> r") == Iff(Iff(p, q), r)
    assert parse_formula("~~p") == Not(Not(p))


def test_truncated_input():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("p &")
    assert err.value.position == 3


@pytest.mark.parametrize("text", ["", "p q", "(p", "p)", "& p", "p $ q", "1p"])
def test_malformed(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_universe_labels():
    u = valuation_universe(["p", "q"])
    assert u.labels == ("w00", "w10", "w01", "w11")
    with pytest.raises(TooManyAtoms):
        valuation_universe(list("abcdef"))


def test_compile_conj(conj):
    agenda = compile_agenda_from_formulas(["p", "q"], ["p", "q", "p & q"])
    assert agenda.universe == conj.universe
    assert [i.members for i in agenda.issues] == [i.members for i in conj.issues]
    assert agenda.names == ("p", "~p", "q", "~q", "p & q", "~(p & q)")


def test_compile_bicond(bicond):
    agenda = compile_agenda_from_formulas(["p", "q"], ["p", "q", "p <-> q"])
    assert agenda.universe == bicond.universe
    assert [i.members for i in agenda.issues] == [i.members for i in bicond.issues]


def test_compile_rejections():
    with pytest.raises(NonContingentIssue):
        compile_agenda_from_formulas(["p"], ["p | ~p"])
    with pytest.raises(NonContingentIssue):
        compile_agenda_from_formulas(["p"], ["p & ~p"])
    with pytest.raises(UnknownAtom):
        compile_agenda_from_formulas(["p"], ["q"])
    with pytest.raises(TooManyAtoms):
        compile_agenda_from_formulas(list("abcdef"), ["a"])


def formulas(atoms=ATOMS):
    leaves = st.sampled_from(atoms).map(Atom)

    def extend(children):
        binary = st.sampled_from([And, Or, Implies, Iff])
        return st.one_of(
            children.map(Not),
            st.tuples(binary, children, children).map(lambda t: t[0](t[1], t[2])),
        )

    return st.recursive(leaves, extend, max_leaves=12)


def brute_truth_set(f, atoms):
    mask = 0
    for w, bits in enumerate(product((False, True), repeat=len(atoms))):
        # world w gives atom k the value of bit k
        valuation = {a: bool(w >> k & 1) for k, a in enumerate(atoms)}
        if evaluate(f, valuation):
            mask |= 1 << w
    return mask


@settings(max_examples=100, derandomize=True, deadline=None)
@given(formulas())
def test_round_trip(f):
    assert parse_formula(to_text(f)) == f


@settings(max_examples=100, derandomize=True, deadline=None)
@given(formulas(), formulas())
def test_truth_table_soundness(f, g):
    full = (1 << 16) - 1
    tf, tg = truth_set(f, ATOMS), truth_set(g, ATOMS)
    assert tf == brute_truth_set(f, ATOMS)
    assert truth_set(Not(f), ATOMS) == full & ~tf
    assert truth_set(And(f, g), ATOMS) == tf & tg
    assert truth_set(Or(f, g), ATOMS) == tf | tg
    assert atoms_of(f) <= set(ATOMS)
