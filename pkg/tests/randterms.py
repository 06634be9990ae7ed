"""Random well-typed terms, random models and sound rewrites for property tests."""
from __future__ import annotations

from relthy.finrel import Model, Relation
from relthy.terms import (Del, Dup, Gen, GeneratorSymbol, Id, Merge, New, Par,
                          Seq, Sym, Theory, cap, cup, del_word, dup_word,
                          merge_word, new_word, seq, par, typecheck)

SIG = Theory(
    ("X", "Y"),
    (GeneratorSymbol("r", ("X",), ("X",)),
     GeneratorSymbol("m", ("X", "X"), ("X",)),
     GeneratorSymbol("u", (), ("X",)),
     GeneratorSymbol("c", ("X",), ("Y",))),
    (),
    "random",
)


def _base(rng, dom, cod, sig):
    options = []
    if dom == cod:
        options.append(Id(dom))
    options += [Gen(g.name) for g in sig.generators if g.dom == dom and g.cod == cod]
    if len(dom) == 1 and cod == dom + dom:
        options.append(Dup(dom[0]))
    if len(cod) == 1 and dom == cod + cod:
        options.append(Merge(cod[0]))
    if len(dom) == 1 and not cod:
        options.append(Del(dom[0]))
    if len(cod) == 1 and not dom:
        options.append(New(cod[0]))
    if len(dom) == 2 and cod == dom[::-1]:
        options.append(Sym(dom[:1], dom[1:]))
    if options:
        return rng.choice(options)
    return seq(del_word(dom), new_word(cod))


def random_word(rng, sig, max_len=2):
    return tuple(rng.choice(sig.sorts) for _ in range(rng.randint(0, max_len)))


def random_term(rng, dom, cod, depth, sig=SIG):
    dom, cod = tuple(dom), tuple(cod)
    roll = rng.random()
    if depth <= 0 or roll < 0.25:
        return _base(rng, dom, cod, sig)
    if roll < 0.65:
        mid = random_word(rng, sig)
        if rng.random() < 0.3:
            g = rng.choice(sig.generators)
            mid = g.dom
            return Seq(random_term(rng, dom, mid, depth - 1, sig),
                       Seq(Gen(g.name), random_term(rng, g.cod, cod, depth - 1, sig)))
        return Seq(random_term(rng, dom, mid, depth - 1, sig),
                   random_term(rng, mid, cod, depth - 1, sig))
    i, j = rng.randint(0, len(dom)), rng.randint(0, len(cod))
    return Par(random_term(rng, dom[:i], cod[:j], depth - 1, sig),
               random_term(rng, dom[i:], cod[j:], depth - 1, sig))


def random_model(rng, sig=SIG, max_size=3, density=None):
    sizes = {s: rng.randint(0, max_size) for s in sig.sorts}
    interp = {}
    for g in sig.generators:
        n = 1
        for s in g.dom:
            n *= sizes[s]
        m = 1
        for s in g.cod:
            m *= sizes[s]
        p = rng.random() if density is None else density
        pairs = [(i, j) for i in range(n) for j in range(m) if rng.random() < p]
        interp[g.name] = Relation.from_pairs(n, m, pairs)
    return Model(sig, sizes, interp)


# Rewrites that hold modulo the Frobenius laws, applied at a random position.

def _rewrite_here(rng, t, sig):
    a, b = typecheck(t, sig)
    choice = rng.randrange(7)
    if choice == 0:   # counit
        return seq(dup_word(a), par(del_word(a), t))
    if choice == 1:   # special
        return seq(t, dup_word(b), merge_word(b))
    if choice == 2:   # snake
        return seq(par(Id(a), cup(a)), par(cap(a), Id(a)), t)
    if choice == 3:   # unit of merge
        return seq(t, par(new_word(b), Id(b)), merge_word(b))
    if choice == 4 and isinstance(t, Par):   # symmetry is natural
        (a1, b1), (a2, b2) = typecheck(t.left, sig), typecheck(t.right, sig)
        return seq(Sym(a1, a2), Par(t.right, t.left), Sym(b2, b1))
    if choice == 5 and isinstance(t, Seq) and isinstance(t.first, Seq):
        return Seq(t.first.first, Seq(t.first.second, t.second))
    # cocommutativity folded into the copy
    return seq(dup_word(a), Sym(a, a), par(t, del_word(a)))


def rewrite(rng, t, sig=SIG):
    """Return a term equal to ``t`` modulo the Frobenius laws."""
    if isinstance(t, (Seq, Par)) and rng.random() < 0.6:
        if isinstance(t, Seq):
            if rng.random() < 0.5:
                return Seq(rewrite(rng, t.first, sig), t.second)
            return Seq(t.first, rewrite(rng, t.second, sig))
        if rng.random() < 0.5:
            return Par(rewrite(rng, t.left, sig), t.right)
        return Par(t.left, rewrite(rng, t.right, sig))
    return _rewrite_here(rng, t, sig)


def random_endo(rng, n, p=0.5):
    return Relation.from_pairs(n, n, [(i, j) for i in range(n) for j in range(n) if rng.random() < p])
