"""Small reference agendas used throughout the docs, tests and CLI demos.

CONJ and BICOND use the valuation universe over atoms ``p, q``: world ``w``
sets ``p`` from bit 0 and ``q`` from bit 1, labelled ``w<p><q>``.
"""

from itertools import combinations

from .core import Agenda, Universe, make_agenda

PQ = Universe(4, ("w00", "w10", "w01", "w11"))


def pair() -> Agenda:
    """{A, ~A} over two worlds."""
    return make_agenda(Universe(2), [{0}], auto_close=True, names=["A"])


def simple4() -> Agenda:
    """Two logically independent atoms without any connective."""
    return make_agenda(PQ, [{1, 3}, {2, 3}], auto_close=True, names=["p", "q"])


def conj() -> Agenda:
    """{p, q, p&q} and complements."""
    return make_agenda(PQ, [{1, 3}, {2, 3}, {3}], auto_close=True, names=["p", "q", "c"])


def bicond() -> Agenda:
    """{p, q, p<->q} and complements."""
    return make_agenda(PQ, [{1, 3}, {2, 3}, {0, 3}], auto_close=True, names=["p", "q", "e"])


def alg3() -> Agenda:
    """All six contingent subsets of a three-world universe, worlds labelled 1..3."""
    universe = Universe(3, ("1", "2", "3"))
    sets = [set(c) for k in (1, 2) for c in combinations(range(3), k)]
    return make_agenda(universe, sets, auto_close=False)


FIXTURES = {
    "PAIR": pair,
    "SIMPLE4": simple4,
    "CONJ": conj,
    "BICOND": bicond,
    "ALG3": alg3,
}
