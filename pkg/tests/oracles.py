"""Brute-force reference implementations.

Nothing here imports the search or evaluation code: relations are plain
sets of pairs and models are checked against first-order definitions.
"""
from __future__ import annotations

import itertools


def all_relations(n, m):
    cells = [(i, j) for i in range(n) for j in range(m)]
    for bits in itertools.product((False, True), repeat=len(cells)):
        yield frozenset(c for c, b in zip(cells, bits) if b)


def compose(f, g):
    return frozenset((x, z) for (x, y) in f for (y2, z) in g if y == y2)


def is_poset(n, le):
    if any((a, a) not in le for a in range(n)):
        return False
    for a, b in le:
        if a != b and (b, a) in le:
            return False
        for c in range(n):
            if (b, c) in le and (a, c) not in le:
                return False
    return True


def count_posets(n):
    return sum(1 for le in all_relations(n, n) if is_poset(n, le))


def tables(n):
    """Every binary operation on ``range(n)`` as a dict ``(a, b) -> ab``."""
    keys = [(a, b) for a in range(n) for b in range(n)]
    for vals in itertools.product(range(n), repeat=len(keys)):
        yield dict(zip(keys, vals))


def is_associative(n, t):
    return all(t[t[a, b], c] == t[a, t[b, c]]
               for a in range(n) for b in range(n) for c in range(n))


def is_regular(n, t):
    return all(any(t[t[a, x], a] == a for x in range(n)) for a in range(n))


def semigroup_tables(n):
    return [t for t in tables(n) if is_associative(n, t)]


def regular_tables(n):
    return [t for t in semigroup_tables(n) if is_regular(n, t)]


def functions(n, m):
    return list(itertools.product(range(m), repeat=n))


def monotone_maps(n, le_f, m, le_g):
    return [fn for fn in functions(n, m)
            if all((fn[a], fn[b]) in le_g for a, b in le_f)]


def is_gsa(n, op, e):
    """``op`` is a dict of defined products, ``e`` the unit element."""
    def o(x, y):
        return op.get((x, y))

    for x in range(n):
        if o(e, x) != x or o(x, e) != x:
            return False
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, yz = o(x, y), o(y, z)
        left = o(xy, z) if xy is not None else None
        right = o(x, yz) if yz is not None else None
        if left != right:
            return False
    for x, z, z2 in itertools.product(range(n), repeat=3):
        if z != z2 and o(x, z) is not None and o(x, z) == o(x, z2):
            return False
        if z != z2 and o(z, x) is not None and o(z, x) == o(z2, x):
            return False
    for x, y in itertools.product(range(n), repeat=2):
        right = any(o(x, z) == y for z in range(n))
        left = any(o(w, x) == y for w in range(n))
        if right != left:
            return False
    return True


def count_gsa(n):
    keys = [(a, b) for a in range(n) for b in range(n)]
    count = 0
    for vals in itertools.product([None, *range(n)], repeat=len(keys)):
        op = {k: v for k, v in zip(keys, vals) if v is not None}
        count += sum(1 for e in range(n) if is_gsa(n, op, e))
    return count


def is_effectoid(n, unit, le, seq):
    """``unit`` a set of elements, ``le`` pairs, ``seq`` triples (a, b, c)."""
    els = range(n)
    for a, a2 in itertools.product(els, repeat=2):
        via_left = any(x in unit and (x, a, a2) in seq for x in els)
        via_right = any(y in unit and (a, y, a2) in seq for y in els)
        if via_left != ((a, a2) in le) or via_right != ((a, a2) in le):
            return False
    for a, b, c, d in itertools.product(els, repeat=4):
        left = any((a, b, x) in seq and (x, c, d) in seq for x in els)
        right = any((b, c, y) in seq and (a, y, d) in seq for y in els)
        if left != right:
            return False
    if any((a, a) not in le for a in els):
        return False
    if any(a in unit and (a, a2) in le and a2 not in unit for a in els for a2 in els):
        return False
    for a, b, c in itertools.product(els, repeat=3):
        if any((a, b, x) in seq and (x, c) in le for x in els) and (a, b, c) not in seq:
            return False
    return True


def count_effectoids(n):
    els = list(range(n))
    triples = list(itertools.product(els, repeat=3))
    count = 0
    for ubits in itertools.product((False, True), repeat=n):
        unit = {a for a, b in zip(els, ubits) if b}
        for le in all_relations(n, n):
            for sbits in itertools.product((False, True), repeat=len(triples)):
                seq = {t for t, b in zip(triples, sbits) if b}
                count += is_effectoid(n, unit, le, seq)
    return count


def bell(n):
    """Number of partitions of an n-set."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
