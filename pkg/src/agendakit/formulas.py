"""Propositional formulas compiled to truth sets over the valuation universe.

Grammar, loosest binding first::

    iff      := implies ("<->" implies)*         left associative
    implies  := or ("->" implies)?               right associative
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := "~" unary | atom | "(" iff ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .core import Agenda, Universe, make_agenda
from .errors import FormulaSyntaxError, NonContingentIssue, TooManyAtoms, UnknownAtom

MAX_ATOMS = 5


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff]

_TOKEN = re.compile(r"\s*(?:(<->)|(->)|([&|~()])|([A-Za-z][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[offset]!r}", text, offset)
        tok = next(g for g in m.groups() if g is not None)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> str:
        return self.tokens[self.k][0]

    def fail(self, message: str):
        tok, pos = self.tokens[self.k]
        raise FormulaSyntaxError(message if tok else "unexpected end of input", self.text, pos)

    def take(self) -> str:
        tok = self.tokens[self.k][0]
        self.k += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek():
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok and (tok[0].isalpha()):
            self.take()
            return Atom(tok)
        self.fail(f"unexpected token {tok!r}")


def parse_formula(text: str) -> Formula:
    if not text.strip():
        raise FormulaSyntaxError("empty formula", text, 0)
    return _Parser(text).parse()


_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def to_text(f: Formula) -> str:
    """Fully parenthesised rendering; ``parse_formula(to_text(f)) == f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + to_text(f.operand)
    return f"({to_text(f.left)} {_SYMBOL[type(f)]} {to_text(f.right)})"


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Not):
        return atoms_of(f.operand)
    return atoms_of(f.left) | atoms_of(f.right)


def evaluate(f: Formula, valuation: dict[str, bool]) -> bool:
    if isinstance(f, Atom):
        return valuation[f.name]
    if isinstance(f, Not):
        return not evaluate(f.operand, valuation)
    a = evaluate(f.left, valuation)
    b = evaluate(f.right, valuation)
    if isinstance(f, And):
        return a and b
    if isinstance(f, Or):
        return a or b
    if isinstance(f, Implies):
        return (not a) or b
    return a == b


def truth_set(f: Formula, atoms: Sequence[str]) -> int:
    """Mask of valuations satisfying ``f``; world ``w`` gives atom ``k`` the value of bit ``k``.

    Computed bottom-up on whole masks rather than per valuation.
    """
    index = {a: k for k, a in enumerate(atoms)}
    size = 1 << len(atoms)
    full = (1 << size) - 1

    def go(g: Formula) -> int:
        if isinstance(g, Atom):
            if g.name not in index:
                raise UnknownAtom(f"atom {g.name!r} is not declared")
            k = index[g.name]
            return sum(1 << w for w in range(size) if w >> k & 1)
        if isinstance(g, Not):
            return full & ~go(g.operand)
        a, b = go(g.left), go(g.right)
        if isinstance(g, And):
            return a & b
        if isinstance(g, Or):
            return a | b
        if isinstance(g, Implies):
            return (full & ~a) | b
        return full & ~(a ^ b)

    return go(f)


def valuation_universe(atoms: Sequence[str]) -> Universe:
    """Universe of all valuations, labelled ``w`` followed by each atom's bit in atom order."""
    if len(atoms) > MAX_ATOMS:
        raise TooManyAtoms(f"{len(atoms)} atoms; at most {MAX_ATOMS} are supported")
    if not atoms:
        raise UnknownAtom("at least one atom is required")
    if len(set(atoms)) != len(atoms):
        raise UnknownAtom("duplicate atom names")
    size = 1 << len(atoms)
    labels = ["w" + "".join(str(w >> k & 1) for k in range(len(atoms))) for w in range(size)]
    return Universe(size, tuple(labels))


def compile_agenda_from_formulas(atoms: Sequence[str], formulas: Sequence[str]) -> Agenda:
    universe = valuation_universe(atoms)
    masks = []
    names = []
    for text in formulas:
        mask = truth_set(parse_formula(text), atoms)
        if mask == 0 or mask == universe.full:
            kind = "contradiction" if mask == 0 else "tautology"
            raise NonContingentIssue(f"formula {text!r} is a {kind}")
        masks.append(mask)
        names.append(text.strip())
    return make_agenda(universe, masks, auto_close=True, names=names)
