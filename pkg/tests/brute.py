"""Definition-level reference implementations on plain frozensets.

Nothing here touches agendakit's bit-mask machinery; issues are frozensets
of worlds and issue collections are tuples of them.
"""

from itertools import chain, combinations


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def meet(universe, sets):
    out = frozenset(universe)
    for s in sets:
        out &= s
    return out


def mis(universe, issues):
    found = []
    for ys in powerset(issues):
        if meet(universe, ys):
            continue
        if all(meet(universe, ys[:k] + ys[k + 1:]) for k in range(len(ys))):
            found.append(frozenset(ys))
    return found


def cond_entails(universe, issues, a, b):
    comp_b = frozenset(universe) - b
    for ys in powerset(issues):
        with_a = meet(universe, ys + (a,))
        if with_a and meet(universe, ys + (comp_b,)) and with_a <= b:
            return True
    return False


def reach(universe, issues):
    rel = {(a, b) for a in issues for b in issues if cond_entails(universe, issues, a, b)}
    while True:
        grown = rel | {(a, c) for (a, b) in rel for (b2, c) in rel if b == b2}
        if grown == rel:
            return rel
        rel = grown


def negate(universe, y, z):
    return frozenset(y - z) | {frozenset(universe) - a for a in z}


def even_negatable(universe, issues):
    for y in mis(universe, issues):
        for z in powerset(sorted(y, key=sorted)):
            if len(z) % 2 == 0 and len(z) >= 2 and meet(universe, negate(universe, y, frozenset(z))):
                return True
    return False


def medians(universe, issues):
    fam = mis(universe, issues)
    return {w for w in universe if all(sum(w in a for a in y) <= 1 for y in fam)}
