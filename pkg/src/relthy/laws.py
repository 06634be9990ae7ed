"""Catalogue of the structural laws every hypergraph category satisfies.

Each law is a pair of parallel terms built from the word-extended structure
in :mod:`relthy.terms`, so the same catalogue can be instantiated on a
single sort or on longer words.
"""
from __future__ import annotations

from typing import NamedTuple

from .terms import (Gen, GeneratorSymbol, Id, Sym, Term, Theory, cap, cup,
                    del_word, dup_word, merge_word, new_word, par, seq)


class Law(NamedTuple):
    name: str
    lhs: Term
    rhs: Term


def frobenius_laws(w) -> list:
    """Commutative special Frobenius algebra laws on the word ``w``."""
    w = tuple(w)
    i = Id(w)
    d, m = dup_word(w), merge_word(w)
    e, n = del_word(w), new_word(w)
    s = Sym(w, w)
    return [
        Law("coassociative", seq(d, par(d, i)), seq(d, par(i, d))),
        Law("counit_left", seq(d, par(e, i)), i),
        Law("counit_right", seq(d, par(i, e)), i),
        Law("cocommutative", seq(d, s), d),
        Law("associative", seq(par(m, i), m), seq(par(i, m), m)),
        Law("unit_left", seq(par(n, i), m), i),
        Law("unit_right", seq(par(i, n), m), i),
        Law("commutative", seq(s, m), m),
        Law("special", seq(d, m), i),
        Law("frobenius_left", seq(par(d, i), par(i, m)), seq(m, d)),
        Law("frobenius_right", seq(par(i, d), par(m, i)), seq(m, d)),
    ]


def coherence_laws(u, v) -> list:
    """The structure on ``u v`` is determined by the structure on ``u`` and ``v``."""
    u, v = tuple(u), tuple(v)
    uv = u + v
    mid = par(Id(u), Sym(u, v), Id(v))
    mid_back = par(Id(u), Sym(v, u), Id(v))
    return [
        Law("dup_tensor", dup_word(uv), seq(par(dup_word(u), dup_word(v)), mid)),
        Law("del_tensor", del_word(uv), par(del_word(u), del_word(v))),
        Law("merge_tensor", merge_word(uv), seq(mid_back, par(merge_word(u), merge_word(v)))),
        Law("new_tensor", new_word(uv), par(new_word(u), new_word(v))),
    ]


def derived_laws(w) -> list:
    """Snake equations and laws about the symmetry."""
    w = tuple(w)
    i = Id(w)
    return [
        Law("snake_left", seq(par(cup(w), i), par(i, cap(w))), i),
        Law("snake_right", seq(par(i, cup(w)), par(cap(w), i)), i),
        Law("sym_involutive", seq(Sym(w, w), Sym(w, w)), par(i, i)),
        Law("sym_dup_natural", seq(par(dup_word(w), i), Sym(w + w, w)),
            seq(Sym(w, w), par(i, dup_word(w)))),
        Law("sym_merge_natural", seq(Sym(w, w + w), par(merge_word(w), i)),
            seq(par(i, merge_word(w)), Sym(w, w))),
        Law("cup_symmetric", seq(cup(w), Sym(w, w)), cup(w)),
        Law("cap_symmetric", seq(Sym(w, w), cap(w)), cap(w)),
    ]


def naturality_laws(a, b) -> list:
    """Symmetry is natural in generators ``f : a -> a`` and ``g : b -> b``."""
    f, g = Gen("f"), Gen("g")
    return [
        Law("sym_natural", seq(par(f, g), Sym(a, b)), seq(Sym(a, b), par(g, f))),
        Law("interchange", seq(par(f, Id(b)), par(Id(a), g)), par(f, g)),
    ]


def law_signature(sorts=("A", "B")) -> Theory:
    """Two sorts with an endo-generator on each, enough for every law above."""
    a, b = sorts
    return Theory(tuple(sorts), (GeneratorSymbol("f", (a,), (a,)),
                                 GeneratorSymbol("g", (b,), (b,))), ())


def all_laws(sig: Theory) -> list:
    """Every catalogued law, instantiated on one sort and on two-sort words."""
    a, b = sig.sorts[:2]
    out = []
    for w in ((a,), (a, b)):
        tag = "[" + ",".join(w) + "]"
        out += [Law(f"{law.name}{tag}", law.lhs, law.rhs)
                for law in frobenius_laws(w) + derived_laws(w)]
    for u, v in (((a,), (b,)), ((a, b), (b,)), ((a,), (a, b))):
        tag = "[" + ",".join(u) + "|" + ",".join(v) + "]"
        out += [Law(f"{law.name}{tag}", law.lhs, law.rhs) for law in coherence_laws(u, v)]
    out += naturality_laws((a,), (b,))
    return out
