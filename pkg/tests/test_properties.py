import pytest
from hypothesis import given, settings, strategies as st

import brute
from agendakit.core import Universe, is_consistent, make_agenda
from agendakit.entailment import entailment_graph
from agendakit.errors import LimitExceeded
from agendakit.fixtures import FIXTURES
from agendakit.formulas import compile_agenda_from_formulas
from agendakit.mis import minimally_inconsistent_subsets
from agendakit.oracle import enumerate_agendas
from agendakit.properties import (
    analyze,
    find_m_set,
    h0_set,
    is_even_negatable,
    is_negation_connected,
    is_pair_negatable,
    partition_into_pc_subagendas,
)

# (PC, EN, pair-negatable, NS, NC, blocked, median worlds)
EXPECTED = {
    "PAIR": (False, False, False, False, False, False, "{w0,w1}"),
    "SIMPLE4": (False, False, False, False, False, False, "{w00,w10,w01,w11}"),
    "CONJ": (False, True, True, True, False, False, "{w00}"),
    "BICOND": (True, False, False, True, True, True, "{}"),
    "ALG3": (True, True, True, True, True, True, "{}"),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_flags(name):
    agenda = FIXTURES[name]()
    f = analyze(agenda)
    got = (f.path_connected, f.even_negatable, f.pair_negatable, f.non_simple,
           f.negation_connected, f.blocked, agenda.universe.format(f.median_points))
    assert got == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_flags_match_set_oracles(name):
    agenda = FIXTURES[name]()
    universe = set(range(agenda.universe.size))
    issues = tuple(frozenset(i.worlds()) for i in agenda.issues)
    f = analyze(agenda)
    assert f.even_negatable == brute.even_negatable(universe, issues)
    medians = sum(1 << w for w in brute.medians(universe, issues))
    assert f.median_points == medians
    rel = brute.reach(universe, issues)
    assert f.path_connected == all((a, b) in rel for a in issues for b in issues)


def test_negation_witnesses(conj):
    f = analyze(conj)
    neg = f.witnesses["even_negatable"]
    assert len(neg.z) % 2 == 0 and len(neg.z) >= 2
    assert is_consistent(neg.negated)
    assert neg.y in minimally_inconsistent_subsets(conj)
    assert f.witnesses["non_simple"].names() == ["p", "q", "~c"]


def test_h0(bicond, conj):
    assert len(h0_set(entailment_graph(bicond))) == len(bicond)
    assert len(h0_set(entailment_graph(conj))) == 0


def test_m_set_conj(conj):
    found = find_m_set(conj)
    assert found and set(found.value.names()) == {"~p", "~q", "~c"}


def test_m_set_three_atoms():
    agenda = compile_agenda_from_formulas("pqr", ["p", "q", "p&q", "r"])
    found = find_m_set(agenda)
    assert found.value.names() == ["~p", "~q", "~(p&q)", "r"]


def test_m_set_refused_when_nc(bicond):
    found = find_m_set(bicond)
    assert not found and found.reason == "agenda is negation-connected"


def test_m_set_exhaustive_properties():
    """Whenever NC fails, an m-set exists and respects every MIS."""
    for size in (3, 4):
        for agenda in enumerate_agendas(size, 3):
            graph = entailment_graph(agenda)
            if is_negation_connected(graph):
                continue
            found = find_m_set(agenda, graph)
            assert found
            m = found.value.selection
            h0 = h0_set(graph).selection
            for i, j in agenda.pairs():
                if not h0 >> i & 1:
                    assert (m >> i & 1) + (m >> j & 1) == 1
            for y in minimally_inconsistent_subsets(agenda):
                cap = 0 if y.selection & h0 else 1
                assert bin(y.selection & m).count("1") <= cap


def test_partition_single_block(alg3, bicond):
    for agenda in (alg3, bicond):
        found = partition_into_pc_subagendas(agenda)
        assert len(found.value) == 1
        assert found.value[0].names == agenda.names


def test_partition_two_biconditionals():
    agenda = compile_agenda_from_formulas("pqrs", ["p", "q", "p<->q", "r", "s", "r<->s"])
    assert not analyze(agenda).path_connected
    parts = partition_into_pc_subagendas(agenda).value
    assert [p.names for p in parts] == [
        ("p", "~p", "q", "~q", "p<->q", "~(p<->q)"),
        ("r", "~r", "s", "~s", "r<->s", "~(r<->s)"),
    ]


def test_partition_absent_without_nc():
    agenda = compile_agenda_from_formulas("pqr", ["p", "q", "p&q", "r"])
    found = partition_into_pc_subagendas(agenda)
    assert not found and found.reason == "agenda is not negation-connected"


def test_partition_cap(alg3):
    with pytest.raises(LimitExceeded):
        partition_into_pc_subagendas(alg3, max_pairs=2)


def test_implication_chain_exhaustive():
    """PC gives NC, NC gives blocked, pair-negatable gives EN."""
    for size in (3, 4):
        for agenda in enumerate_agendas(size, 3):
            f = analyze(agenda)
            if f.path_connected:
                assert f.negation_connected
            if f.negation_connected:
                assert f.blocked
            if f.pair_negatable:
                assert f.even_negatable


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 2), min_size=1, max_size=3))
))
def test_even_negatable_matches_oracle(case):
    n, masks = case
    agenda = make_agenda(Universe(n), masks, auto_close=True)
    universe = set(range(n))
    issues = tuple(frozenset(i.worlds()) for i in agenda.issues)
    mis = minimally_inconsistent_subsets(agenda)
    assert (is_even_negatable(mis) is not None) == brute.even_negatable(universe, issues)
    if is_pair_negatable(mis) is not None:
        assert is_even_negatable(mis) is not None
