import pytest

from agendakit import oracle
from agendakit.errors import LimitExceeded
from agendakit.oracle import (
    brute_force_mis,
    complement_pairs,
    enumerate_agendas,
    enumerate_algebras,
    verify_lemmas,
)


def test_complement_pairs():
    assert complement_pairs(2) == [1]
    assert len(complement_pairs(3)) == 3
    assert len(complement_pairs(4)) == 7


@pytest.mark.parametrize("size, pairs, count", [(2, 3, 1), (3, 3, 7), (4, 3, 63), (4, 2, 28), (4, 1, 7)])
def test_agenda_counts(size, pairs, count):
    agendas = list(enumerate_agendas(size, pairs))
    assert len(agendas) == count
    assert len({tuple(i.members for i in a.issues) for a in agendas}) == count


def test_algebra_counts():
    # one algebra per set partition of the worlds (Bell numbers)
    assert len(list(enumerate_algebras(3))) == 5
    assert len(list(enumerate_algebras(4))) == 15
    for fam in enumerate_algebras(3):
        assert 0 in fam and 7 in fam


def test_enumeration_bounds():
    with pytest.raises(LimitExceeded):
        list(enumerate_agendas(5, 1))


def test_brute_force_mis(conj):
    assert [y.names() for y in brute_force_mis(conj)][-1] == ["p", "q", "~c"]


def test_verify_lemmas_clean():
    run = verify_lemmas()
    assert run.ok
    assert run.agendas == 70
    assert run.algebras == 8
    assert run.tally("entailment-oracle").instances == 1720
    assert run.tally("not-nc-m-set").instances == 62


def test_verifier_catches_planted_bug(monkeypatch):
    monkeypatch.setattr(oracle, "is_pair_negatable", lambda mis: None)
    run = verify_lemmas(worlds=(4,), max_pairs=3, algebras=False, entailment_oracle=False)
    assert not run.ok
    assert run.tally("en-iff-pair-negatable").counterexamples


def test_verifier_catches_bad_median(monkeypatch):
    monkeypatch.setattr(oracle, "median_points", lambda mis: 0)
    run = verify_lemmas(worlds=(3,), algebras=False, entailment_oracle=False)
    assert run.tally("blocked-iff-no-median").counterexamples
