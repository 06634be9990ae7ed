"""The example theories shipped with relthy, as ``.rat`` sources.

Each axiom carries a comment with the first-order statement it encodes.
Bidirectional statements are entered as two inclusions.
"""
from __future__ import annotations

from functools import lru_cache

from .dsl import parse
from .terms import Theory

SOURCES = {}

SOURCES["sets"] = """\
theory sets
# no generators and no equations: models are sets, morphisms are functions
sort X
"""

SOURCES["nonempty"] = """\
theory nonempty
sort X
# new ; del = the identity on the unit: the carrier has an element
axiom nonempty: new ; del = id([])
"""

SOURCES["posets"] = """\
theory posets
sort X
gen le : X -> X
# forall a. a <= a
axiom reflexive: id <= le
# a <= b and b <= c implies a <= c
axiom transitive: le ; le <= le
# a <= b and b <= a implies a = b
axiom antisymmetric: le /\\ conv(le) <= id
"""

_SEMIGROUP = """\
sort S
gen m : [S, S] -> S
# each pair has at most one product
axiom simple: conv(m) ; m <= id
# each pair has at least one product
axiom total: id([S, S]) <= m ; conv(m)
# (ab)c = a(bc)
axiom associative: (m * id) ; m = (id * m) ; m
"""

SOURCES["semigroups"] = "theory semigroups\n" + _SEMIGROUP

SOURCES["regular-semigroups"] = "theory regular_semigroups\n" + _SEMIGROUP + """\
# forall a. exists x. axa = a
axiom regular: id <= dup ; (id * new * id) ; (m * id) ; m
"""

SOURCES["effectoids"] = """\
theory effectoids
sort A
# unit relation  eps |-> a
gen unit : [] -> A
# preorder  a <= a'
gen le : A -> A
# ternary relation  a ; b |-> c
gen seq : [A, A] -> A
# Identity: (exists x. eps |-> x and x ; a |-> a')  <=>  a <= a'
axiom identity_left_sub: (unit * id) ; seq <= le
axiom identity_left_sup: le <= (unit * id) ; seq
# Identity: a <= a'  <=>  (exists y. eps |-> y and a ; y |-> a')
axiom identity_right_sub: (id * unit) ; seq <= le
axiom identity_right_sup: le <= (id * unit) ; seq
# Associativity: (exists x. a;b |-> x and x;c |-> d) <=> (exists y. b;c |-> y and a;y |-> d)
axiom associativity_sub: (seq * id) ; seq <= (id * seq) ; seq
axiom associativity_sup: (id * seq) ; seq <= (seq * id) ; seq
# Reflexive congruence 1: a <= a
axiom congruence_refl: id <= le
# Reflexive congruence 2: eps |-> a and a <= a' implies eps |-> a'
axiom congruence_unit: unit ; le <= unit
# Reflexive congruence 3: (exists x. a;b |-> x and x <= c) implies a;b |-> c
axiom congruence_seq: seq ; le <= seq
"""

SOURCES["gsa"] = """\
theory gsa
sort M
# partial monoid operation x o y
gen op : [M, M] -> M
# unit
gen e : [] -> M
# op and e are simple, e is total
axiom op_simple: conv(op) ; op <= id
axiom e_simple: conv(e) ; e <= id
axiom e_total: id([]) <= e ; conv(e)
# (x o y) o z = x o (y o z)
axiom associative: (op * id) ; op = (id * op) ; op
# e o x = x = x o e
axiom unit_left: (e * id) ; op = id
axiom unit_right: (id * e) ; op = id
# x o z = x o z' implies z = z'
axiom cancel_left: (new * id) ; (dup * id) ; (id * op) ; (id * conv(op)) ; (merge * id) ; (del * id) <= id
# z o x = z' o x implies z = z'
axiom cancel_right: (id * new) ; (id * dup) ; (op * id) ; (conv(op) * id) ; (id * merge) ; (id * del) <= id
# (exists z. x o z = y)  <=>  (exists w. w o x = y)
axiom conjugation_sub: (id * new) ; op <= (new * id) ; op
axiom conjugation_sup: (new * id) ; op <= (id * new) ; op
"""

NAMES = tuple(SOURCES)


@lru_cache(maxsize=None)
def builtin(name: str) -> Theory:
    try:
        return parse(SOURCES[name])
    except KeyError:
        raise KeyError(f"no builtin theory {name!r}; choose from {', '.join(NAMES)}") from None


# Stored witnesses: one model and (where one exists) one non-model per theory.
# Pair lists use mixed-radix indices over the generator's arity words.
WITNESSES = {
    "sets": ({"sizes": {"X": 2}, "model": {}}, None),
    "nonempty": ({"sizes": {"X": 1}, "model": {}},
                 {"sizes": {"X": 0}, "model": {}}),
    "posets": ({"sizes": {"X": 2}, "model": {"le": [[0, 0], [1, 1], [0, 1]]}},
               {"sizes": {"X": 2}, "model": {"le": [[0, 0], [0, 1]]}}),
    # left-zero band xy = x  /  xy = 1 - x, which is not associative
    "semigroups": ({"sizes": {"S": 2}, "model": {"m": [[0, 0], [1, 0], [2, 1], [3, 1]]}},
                   {"sizes": {"S": 2}, "model": {"m": [[0, 1], [1, 1], [2, 0], [3, 0]]}}),
    # left-zero band is regular; the null semigroup xy = 0 is not
    "regular-semigroups": ({"sizes": {"S": 2}, "model": {"m": [[0, 0], [1, 0], [2, 1], [3, 1]]}},
                           {"sizes": {"S": 2}, "model": {"m": [[0, 0], [1, 0], [2, 0], [3, 0]]}}),
    "effectoids": ({"sizes": {"A": 1}, "model": {"unit": [[0, 0]], "le": [[0, 0]], "seq": [[0, 0]]}},
                   {"sizes": {"A": 1}, "model": {"unit": [[0, 0]], "le": [[0, 0]], "seq": []}}),
    # the trivial group  /  a unit-less partial monoid
    "gsa": ({"sizes": {"M": 1}, "model": {"op": [[0, 0]], "e": [[0, 0]]}},
            {"sizes": {"M": 1}, "model": {"op": [[0, 0]], "e": []}}),
}
